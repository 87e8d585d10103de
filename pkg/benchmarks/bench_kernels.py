"""Benchmark the numba-jitted batch-multiply kernel against the pure-numpy
fallback on ball generation, the dominant cost of the pipeline.

Run: python3 benchmarks/bench_kernels.py
"""

import os
import time

import numpy as np

from steklov import cayley, groups, kernels


def time_ball(spec, radius, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        ball = cayley.generate_ball(spec, radius)
        best = min(best, time.perf_counter() - start)
    return best, ball.n_vertices


def time_raw_kernel(spec, count=200_000, repeats=5):
    rng = np.random.default_rng(0)
    kinds, starts = kernels.encode_blocks(spec)
    X = rng.integers(-50, 51, size=(count, spec.dimension)).astype(np.int64)
    G = np.array(groups.standard_generators(spec), dtype=np.int64)
    kernels.batch_multiply(X, G, kinds, starts)  # warm up / compile
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        kernels.batch_multiply(X, G, kinds, starts)
        best = min(best, time.perf_counter() - start)
    return best


def run(label):
    print(f"--- {label} (numba={kernels.use_numba()}) ---")
    for name, spec, radius in (
        ("Z^3", groups.lattice(3), 30),
        ("H3", groups.heisenberg(), 14),
    ):
        raw = time_raw_kernel(spec)
        elapsed, n = time_ball(spec, radius)
        print(f"{name}: raw kernel 200k x |S| products {raw * 1e3:8.2f} ms,  "
              f"ball radius {radius} ({n} vertices) {elapsed * 1e3:8.2f} ms")


def main():
    if not kernels.HAS_NUMBA:
        print("numba unavailable; only the numpy path can be benchmarked")
        run("numpy fallback")
        return
    os.environ.pop("STEKLOV_PURE_NUMPY", None)
    run("numba kernel")
    os.environ["STEKLOV_PURE_NUMPY"] = "1"
    run("numpy fallback")
    os.environ.pop("STEKLOV_PURE_NUMPY", None)


if __name__ == "__main__":
    main()
