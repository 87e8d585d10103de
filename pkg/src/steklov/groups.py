"""Exact arithmetic for the finitely generated groups under study.

Supported groups: integer lattices Z^d, the discrete Heisenberg group H3
(upper-triangular unipotent 3x3 integer matrices, stored as (a, b, c)
coordinates), and direct products of these. Elements are canonical integer
coordinate tuples, so equality and hashing are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

GroupElement = tuple[int, ...]

LATTICE = "Z"
HEISENBERG = "H3"


class InvalidElementError(ValueError):
    """Element coordinates do not match the group specification."""


class InvalidGeneratingSetError(ValueError):
    """Generating set violates symmetry, distinctness, or identity exclusion."""


@dataclass(frozen=True)
class Block:
    """One factor of a direct product: a lattice Z^dim or Heisenberg H3."""

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind == LATTICE:
            if self.dim < 1:
                raise ValueError("lattice rank must be positive")
        elif self.kind == HEISENBERG:
            if self.dim != 3:
                raise ValueError("Heisenberg block has exactly 3 coordinates")
        else:
            raise ValueError(f"unknown block kind {self.kind!r}")


@dataclass(frozen=True)
class GroupSpec:
    """A direct product of lattice and Heisenberg blocks with a symmetric
    generating set. ``generators=None`` means the standard set."""

    blocks: tuple[Block, ...]
    generators: tuple[GroupElement, ...] | None = field(default=None)

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("group must have at least one block")
        if self.generators is not None:
            object.__setattr__(self, "generators", tuple(map(tuple, self.generators)))
            validate_generating_set(self, self.generators)

    @property
    def dimension(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def growth_order(self) -> int:
        return sum(b.dim if b.kind == LATTICE else 4 for b in self.blocks)

    def describe(self) -> str:
        parts = []
        for b in self.blocks:
            parts.append(f"Z^{b.dim}" if b.kind == LATTICE else "H3")
        return " x ".join(parts)


def lattice(d: int) -> GroupSpec:
    return GroupSpec((Block(LATTICE, d),))


def heisenberg() -> GroupSpec:
    return GroupSpec((Block(HEISENBERG, 3),))


def product(left: GroupSpec, right: GroupSpec) -> GroupSpec:
    return GroupSpec(left.blocks + right.blocks)


def parse_group(text: str) -> GroupSpec:
    """Parse a group string such as ``Z^2``, ``H3`` or ``Z^1 x H3``."""
    blocks: list[Block] = []
    for part in text.split("x"):
        part = part.strip()
        if part == "H3":
            blocks.append(Block(HEISENBERG, 3))
        elif part == "Z":
            blocks.append(Block(LATTICE, 1))
        elif part.startswith("Z^"):
            try:
                d = int(part[2:])
            except ValueError:
                raise ValueError(f"cannot parse group factor {part!r}") from None
            blocks.append(Block(LATTICE, d))
        else:
            raise ValueError(f"cannot parse group factor {part!r}")
    return GroupSpec(tuple(blocks))


def _check_element(spec: GroupSpec, x: GroupElement) -> None:
    if len(x) != spec.dimension:
        raise InvalidElementError(
            f"element of length {len(x)} for group {spec.describe()} "
            f"(expected {spec.dimension})"
        )


def identity(spec: GroupSpec) -> GroupElement:
    return (0,) * spec.dimension


def multiply(spec: GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement:
    """Group product in canonical coordinates, blockwise.

    Heisenberg blocks compose as the unipotent matrices [[1,a,c],[0,1,b],[0,0,1]]:
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
    """
    _check_element(spec, x)
    _check_element(spec, y)
    out: list[int] = []
    pos = 0
    for b in spec.blocks:
        xs, ys = x[pos : pos + b.dim], y[pos : pos + b.dim]
        if b.kind == LATTICE:
            out.extend(xi + yi for xi, yi in zip(xs, ys))
        else:
            a, bb, c = xs
            a2, b2, c2 = ys
            out.extend((a + a2, bb + b2, c + c2 + a * b2))
        pos += b.dim
    return tuple(out)


def inverse(spec: GroupSpec, x: GroupElement) -> GroupElement:
    _check_element(spec, x)
    out: list[int] = []
    pos = 0
    for b in spec.blocks:
        xs = x[pos : pos + b.dim]
        if b.kind == LATTICE:
            out.extend(-xi for xi in xs)
        else:
            a, bb, c = xs
            out.extend((-a, -bb, a * bb - c))
        pos += b.dim
    return tuple(out)


def standard_generators(spec: GroupSpec) -> list[GroupElement]:
    """Default symmetric generating set: +-unit vectors for each lattice axis,
    +-(1,0,0) and +-(0,1,0) for each Heisenberg block, embedded in the product."""
    gens: list[GroupElement] = []
    width = spec.dimension
    pos = 0
    for b in spec.blocks:
        axes = range(b.dim) if b.kind == LATTICE else range(2)
        for axis in axes:
            for sign in (1, -1):
                coords = [0] * width
                coords[pos + axis] = sign
                gens.append(tuple(coords))
        pos += b.dim
    return gens


def generators(spec: GroupSpec) -> list[GroupElement]:
    if spec.generators is not None:
        return list(spec.generators)
    return standard_generators(spec)


def validate_generating_set(spec: GroupSpec, gens: tuple[GroupElement, ...]) -> None:
    if not gens:
        raise InvalidGeneratingSetError("generating set is empty")
    if len(set(gens)) != len(gens):
        raise InvalidGeneratingSetError("generating set has repeated elements")
    e = identity(spec)
    gen_set = set(gens)
    if e in gen_set:
        raise InvalidGeneratingSetError("identity element in generating set")
    for s in gens:
        _check_element(spec, s)
        if inverse(spec, s) not in gen_set:
            raise InvalidGeneratingSetError(f"generating set not symmetric: {s} lacks inverse")
