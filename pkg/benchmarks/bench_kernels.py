#!/usr/bin/env python3
"""Compare the compiled kernel backend against the pure-numpy fallback.

Shapes mirror the pipeline's hot spots: CART split scans over the
2500-column image matrix, kNN distance blocks, and mRMR joint histograms.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from modhate._kernels import pykernels

try:
    from modhate._kernels import _ckernels
except ImportError:
    _ckernels = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_split_scan(backend, X, y, w, repeat):
    def run():
        for f in range(X.shape[1]):
            backend.gini_best_split(X[:, f], y, w)
    return timeit(run, repeat)


def bench_dists(backend, Q, P, repeat):
    return timeit(lambda: backend.pairwise_sq_dists(Q, P), repeat)


def bench_joint(backend, a, b, repeat):
    def run():
        for _ in range(200):
            backend.joint_counts(a, b, 8, 8)
    return timeit(run, repeat)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    X = rng.normal(size=(240, 2500))
    y = rng.integers(0, 2, size=240).astype(np.int64)
    w = rng.uniform(0.1, 1.0, size=240)
    Q = rng.normal(size=(60, 2500))
    P = rng.normal(size=(240, 2500))
    a = rng.integers(0, 8, size=240)
    b = rng.integers(0, 8, size=240)

    cases = [
        ("gini split scan 240x2500", lambda be: bench_split_scan(be, X, y, w, args.repeat)),
        ("sq dists 60x240x2500", lambda be: bench_dists(be, Q, P, args.repeat)),
        ("joint counts 240 x200", lambda be: bench_joint(be, a, b, args.repeat)),
    ]

    print(f"{'kernel':28s} {'pure-numpy':>12s} {'compiled':>12s} {'speedup':>9s}")
    for name, runner in cases:
        t_py = runner(pykernels)
        if _ckernels is None:
            print(f"{name:28s} {t_py * 1e3:9.1f} ms {'n/a':>12s} {'n/a':>9s}")
            continue
        t_c = runner(_ckernels)
        print(f"{name:28s} {t_py * 1e3:9.1f} ms {t_c * 1e3:9.1f} ms {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
