import numpy as np
import pytest

from steklov import groups, kernels


def random_coords(rng, count, dim):
    return rng.integers(-8, 9, size=(count, dim)).astype(np.int64)


@pytest.mark.parametrize(
    "spec",
    [groups.lattice(2), groups.heisenberg(), groups.product(groups.lattice(1), groups.heisenberg())],
    ids=lambda s: s.describe(),
)
def test_numpy_path_matches_scalar_multiply(spec):
    rng = np.random.default_rng(5)
    kinds, starts = kernels.encode_blocks(spec)
    X = random_coords(rng, 13, spec.dimension)
    G = np.array(groups.standard_generators(spec), dtype=np.int64)
    out = kernels.batch_multiply_numpy(X, G, kinds, starts)
    row = 0
    for x in X:
        for g in G:
            expected = groups.multiply(spec, tuple(x), tuple(g))
            assert tuple(out[row]) == expected
            row += 1


@pytest.mark.skipif(not kernels.HAS_NUMBA, reason="numba unavailable")
@pytest.mark.parametrize(
    "spec",
    [groups.lattice(3), groups.heisenberg(), groups.product(groups.heisenberg(), groups.lattice(2))],
    ids=lambda s: s.describe(),
)
def test_numba_kernel_matches_numpy_path(spec):
    rng = np.random.default_rng(9)
    kinds, starts = kernels.encode_blocks(spec)
    X = random_coords(rng, 50, spec.dimension)
    G = random_coords(rng, 7, spec.dimension)
    a = kernels._batch_multiply_njit(X, G, kinds, starts)
    b = kernels.batch_multiply_numpy(X, G, kinds, starts)
    np.testing.assert_array_equal(a, b)


def test_env_flag_forces_numpy(monkeypatch):
    monkeypatch.setenv("STEKLOV_PURE_NUMPY", "1")
    assert not kernels.use_numba()
    monkeypatch.delenv("STEKLOV_PURE_NUMPY")
    assert kernels.use_numba() == kernels.HAS_NUMBA


def test_overflow_guard():
    spec = groups.heisenberg()
    kinds, starts = kernels.encode_blocks(spec)
    X = np.array([[2**40, 0, 0]], dtype=np.int64)
    G = np.array([[0, 1, 0]], dtype=np.int64)
    with pytest.raises(OverflowError):
        kernels.batch_multiply(X, G, kinds, starts)
