"""Hot kernels for batch group multiplication on coordinate arrays.

Ball generation spends essentially all its time computing frontier-by-generator
products. Two interchangeable implementations exist: a numba @njit kernel and a
pure-numpy broadcast path. Set ``STEKLOV_PURE_NUMPY=1`` to force the numpy
path; it is also used automatically when numba is unavailable.
"""

from __future__ import annotations

import os

import numpy as np

from .groups import HEISENBERG, GroupSpec

# Coordinates this large would risk int64 overflow in the Heisenberg cross term.
_COORD_LIMIT = 2**31

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False


def use_numba() -> bool:
    return HAS_NUMBA and os.environ.get("STEKLOV_PURE_NUMPY", "") not in ("1", "true")


def encode_blocks(spec: GroupSpec) -> tuple[np.ndarray, np.ndarray]:
    """Encode the block structure as (kinds, starts) int64 arrays.

    kind code 0 = lattice, 1 = Heisenberg; starts has one trailing end offset.
    """
    kinds = np.array([1 if b.kind == HEISENBERG else 0 for b in spec.blocks], dtype=np.int64)
    starts = np.zeros(len(spec.blocks) + 1, dtype=np.int64)
    for i, b in enumerate(spec.blocks):
        starts[i + 1] = starts[i] + b.dim
    return kinds, starts


def _check_overflow(X: np.ndarray, G: np.ndarray) -> None:
    if X.size and np.abs(X).max() >= _COORD_LIMIT:
        raise OverflowError("element coordinates exceed the safe int64 range")
    if G.size and np.abs(G).max() >= _COORD_LIMIT:
        raise OverflowError("generator coordinates exceed the safe int64 range")


def batch_multiply_numpy(
    X: np.ndarray, G: np.ndarray, kinds: np.ndarray, starts: np.ndarray
) -> np.ndarray:
    """All products X[i]*G[j], returned as an (m*g, width) array, j fastest."""
    out = (X[:, None, :] + G[None, :, :]).astype(np.int64)
    for k, kind in enumerate(kinds):
        if kind == 1:
            o = starts[k]
            out[:, :, o + 2] += X[:, None, o] * G[None, :, o + 1]
    return out.reshape(-1, X.shape[1])


if HAS_NUMBA:

    @njit(cache=True)
    def _batch_multiply_njit(X, G, kinds, starts):  # pragma: no cover - jitted
        m, w = X.shape
        g = G.shape[0]
        out = np.empty((m * g, w), dtype=np.int64)
        for i in range(m):
            base = i * g
            for j in range(g):
                row = base + j
                for c in range(w):
                    out[row, c] = X[i, c] + G[j, c]
                for k in range(kinds.shape[0]):
                    if kinds[k] == 1:
                        o = starts[k]
                        out[row, o + 2] += X[i, o] * G[j, o + 1]
        return out


def batch_multiply(
    X: np.ndarray, G: np.ndarray, kinds: np.ndarray, starts: np.ndarray
) -> np.ndarray:
    """Dispatch to the jitted kernel or the numpy fallback."""
    _check_overflow(X, G)
    if use_numba():
        return _batch_multiply_njit(
            np.ascontiguousarray(X), np.ascontiguousarray(G), kinds, starts
        )
    return batch_multiply_numpy(X, G, kinds, starts)
