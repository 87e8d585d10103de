"""Discrete Steklov spectra of subgraphs of polynomial-growth Cayley graphs."""

from .cayley import BallGraph, GrowthTable, estimate_growth_order, generate_ball, growth_table, neighbors
from .groups import GroupSpec, heisenberg, identity, inverse, lattice, multiply, parse_group, product, standard_generators
from .harness import ExperimentRecord, HanHuaConstants, check_decay, check_han_hua, check_main_bound, run_sweep
from .solver import DtNMatrix, LaplacianBlocks, SteklovSpectrum, assemble, dtn_matrix, harmonic_extension, oracle_full_eigen, steklov_spectrum
from .subgraph import ShapeFamily, SubgraphWithBoundary, induce, instantiate_family, isoperimetric_ratio

__all__ = [
    "BallGraph",
    "DtNMatrix",
    "ExperimentRecord",
    "GroupSpec",
    "GrowthTable",
    "HanHuaConstants",
    "LaplacianBlocks",
    "ShapeFamily",
    "SteklovSpectrum",
    "SubgraphWithBoundary",
    "assemble",
    "check_decay",
    "check_han_hua",
    "check_main_bound",
    "dtn_matrix",
    "estimate_growth_order",
    "generate_ball",
    "growth_table",
    "harmonic_extension",
    "heisenberg",
    "identity",
    "induce",
    "instantiate_family",
    "inverse",
    "isoperimetric_ratio",
    "lattice",
    "multiply",
    "neighbors",
    "oracle_full_eigen",
    "parse_group",
    "product",
    "run_sweep",
    "standard_generators",
    "steklov_spectrum",
]
