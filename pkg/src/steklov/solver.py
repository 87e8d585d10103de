"""Steklov spectra via the boundary Schur complement of the graph Laplacian.

The Laplacian of (closure, E') is assembled in interior/boundary block form
[[L_II, L_IB], [L_IB^T, L_BB]]; the Dirichlet-to-Neumann matrix is
Lambda = L_BB - L_IB^T L_II^{-1} L_IB and its eigenvalues are the Steklov
eigenvalues. A brute-force generalized-eigenproblem oracle validates the
Schur-complement path on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .subgraph import SubgraphWithBoundary

DENSE_CUTOFF = 4000
ZERO_EIG_REL_TOL = 1e-9


class SolverError(RuntimeError):
    pass


@dataclass
class LaplacianBlocks:
    l_ii: sp.csc_matrix
    l_ib: sp.csc_matrix
    l_bb_diag: np.ndarray  # diagonal only: no boundary-boundary edges exist

    @property
    def n_interior(self) -> int:
        return self.l_ii.shape[0]

    @property
    def n_boundary(self) -> int:
        return self.l_ib.shape[1]

    def full_dense(self) -> np.ndarray:
        ni, nb = self.n_interior, self.n_boundary
        full = np.zeros((ni + nb, ni + nb))
        full[:ni, :ni] = self.l_ii.toarray()
        full[:ni, ni:] = self.l_ib.toarray()
        full[ni:, :ni] = self.l_ib.toarray().T
        full[ni:, ni:] = np.diag(self.l_bb_diag)
        return full


@dataclass
class DtNMatrix:
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]


@dataclass
class SteklovSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.eigenvalues)


def assemble(sub: SubgraphWithBoundary) -> LaplacianBlocks:
    ni, nb = sub.n_interior, sub.n_boundary
    rows_ii, cols_ii, vals_ii = [], [], []
    rows_ib, cols_ib, vals_ib = [], [], []
    deg = np.zeros(ni + nb)
    for u, v in sub.edges:
        deg[u] += 1
        deg[v] += 1
        if v < ni:  # interior-interior (u < v)
            rows_ii.extend((u, v))
            cols_ii.extend((v, u))
            vals_ii.extend((-1.0, -1.0))
        else:  # interior-boundary: u interior, v boundary
            rows_ib.append(u)
            cols_ib.append(v - ni)
            vals_ib.append(-1.0)
    rows_ii.extend(range(ni))
    cols_ii.extend(range(ni))
    vals_ii.extend(deg[:ni])
    l_ii = sp.csc_matrix((vals_ii, (rows_ii, cols_ii)), shape=(ni, ni))
    l_ib = sp.csc_matrix((vals_ib, (rows_ib, cols_ib)), shape=(ni, nb))
    return LaplacianBlocks(l_ii, l_ib, deg[ni:])


def _interior_solve(blocks: LaplacianBlocks, rhs: np.ndarray) -> np.ndarray:
    """Solve L_II x = rhs by sparse LU with one refinement step; fall back to
    CG at 1e-12 relative residual if the factorization fails."""
    try:
        lu = spla.splu(blocks.l_ii.tocsc())
        x = lu.solve(rhs)
        x += lu.solve(rhs - blocks.l_ii @ x)
        return x
    except RuntimeError as exc:
        if rhs.ndim > 1:
            raise SolverError(f"interior factorization failed: {exc}") from exc
        x, info = spla.cg(blocks.l_ii, rhs, rtol=1e-12)
        if info != 0:
            raise SolverError("interior solve failed: singular L_II") from exc
        return x


def harmonic_extension(blocks: LaplacianBlocks, boundary_values: np.ndarray) -> np.ndarray:
    """Interior values of the harmonic function with the given boundary data."""
    u_b = np.asarray(boundary_values, dtype=float)
    rhs = -(blocks.l_ib @ u_b)
    u_i = _interior_solve(blocks, rhs)
    resid = np.abs(blocks.l_ii @ u_i - rhs).max() if len(u_i) else 0.0
    scale = max(1.0, np.abs(u_b).max()) if len(u_b) else 1.0
    if resid > 1e-10 * scale:
        raise SolverError(f"harmonic extension residual {resid:.3e} too large")
    return u_i


def dtn_matrix(blocks: LaplacianBlocks) -> DtNMatrix:
    """Lambda = L_BB - L_IB^T L_II^{-1} L_IB, symmetrized to scrub roundoff."""
    l_ib_dense = blocks.l_ib.toarray()
    x = _interior_solve(blocks, l_ib_dense)
    lam = np.diag(blocks.l_bb_diag) - l_ib_dense.T @ x
    return DtNMatrix((lam + lam.T) / 2.0)


def steklov_spectrum(
    dtn: DtNMatrix,
    k_max: int | None = None,
    dense_cutoff: int = DENSE_CUTOFF,
    with_vectors: bool = True,
) -> SteklovSpectrum:
    """All eigenvalues ascending (dense path), or the smallest k_max+1 through
    an iterative extremal solver when the boundary is larger than the cutoff."""
    n = dtn.size
    if n <= dense_cutoff or k_max is None or k_max + 1 >= n:
        if with_vectors:
            vals, vecs = scipy.linalg.eigh(dtn.entries)
            return SteklovSpectrum(vals, vecs)
        vals = scipy.linalg.eigh(dtn.entries, eigvals_only=True)
        return SteklovSpectrum(vals)
    try:
        vals, vecs = spla.eigsh(dtn.entries, k=k_max + 1, sigma=-1e-8, which="LM")
    except spla.ArpackNoConvergence as exc:
        raise SolverError(f"iterative eigensolver did not converge: {exc}") from exc
    order = np.argsort(vals)
    return SteklovSpectrum(vals[order], vecs[:, order] if with_vectors else None)


def oracle_full_eigen(sub: SubgraphWithBoundary) -> SteklovSpectrum:
    """Brute-force Steklov spectrum from the dense generalized problem
    L w = sigma D w, D the boundary indicator; independent of the Schur path."""
    if sub.n_closure > 200:
        raise ValueError("oracle limited to closures of at most 200 vertices")
    blocks = assemble(sub)
    full = blocks.full_dense()
    d = np.zeros_like(full)
    for i in range(sub.n_interior, sub.n_closure):
        d[i, i] = 1.0
    alpha, beta = scipy.linalg.eig(full, d, right=False, homogeneous_eigvals=True)
    finite = np.abs(beta) > 1e-10 * np.maximum(np.abs(alpha), 1.0)
    vals = np.real(alpha[finite] / beta[finite])
    if len(vals) != sub.n_boundary:
        raise SolverError(
            f"oracle found {len(vals)} finite eigenvalues, expected {sub.n_boundary}"
        )
    return SteklovSpectrum(np.sort(vals))


def spectrum_of(sub: SubgraphWithBoundary, **kwargs) -> SteklovSpectrum:
    return steklov_spectrum(dtn_matrix(assemble(sub)), **kwargs)


def harmonicity_residuals(
    sub: SubgraphWithBoundary,
    blocks: LaplacianBlocks,
    sigma: float,
    boundary_vector: np.ndarray,
) -> tuple[float, float]:
    """Direct check of the two defining equations for an eigenpair: returns
    (max |Laplacian u| on the interior, max |normal derivative - sigma*u| on
    the boundary) for the harmonic extension of the boundary eigenvector."""
    u_i = harmonic_extension(blocks, boundary_vector)
    interior_resid = (
        np.abs(blocks.l_ii @ u_i + blocks.l_ib @ boundary_vector).max()
        if sub.n_interior
        else 0.0
    )
    # normal derivative at boundary vertex i: deg(i)*u(i) - sum of interior
    # neighbor values, i.e. the boundary row of the full Laplacian applied to u
    normal_deriv = blocks.l_bb_diag * boundary_vector + np.asarray(
        blocks.l_ib.T @ u_i
    ).ravel()
    boundary_resid = np.abs(normal_deriv - sigma * boundary_vector).max()
    return float(interior_resid), float(boundary_resid)


def trivial_eigenvalue_ok(spectrum: SteklovSpectrum) -> bool:
    """sigma_0 is zero and sigma_1 positive, at a scale-aware tolerance."""
    vals = spectrum.eigenvalues
    tol = ZERO_EIG_REL_TOL * max(1.0, float(vals[-1]))
    return vals[0] <= tol and (len(vals) == 1 or vals[1] > tol)


def spectrum_to_csv(spectrum: SteklovSpectrum) -> str:
    lines = ["k,sigma"]
    lines.extend(f"{k},{v:.17g}" for k, v in enumerate(spectrum.eigenvalues))
    return "\n".join(lines) + "\n"
