"""Benchmark the simplex-scan kernel: compiled extension vs pure Python.

Times the constraint-probability evaluation on workloads shaped like the
search oracle's stages (a full dense scan and a beam-refinement batch),
then one end-to-end oracle call per backend.

Usage: python benchmarks/bench_scan.py [--repeats 3]
"""

import argparse
import math
import time

import numpy as np

from orderbound import LexiHigh, OracleConfig, SupportGrid, homogeneous_sample, kernels
from orderbound import _scan_py
from orderbound.oracle import pessimal_bound_oracle

try:
    from orderbound import _scan as compiled
except ImportError:
    compiled = None


def _workload(N, k, T, max_exp, seed=0):
    rng = np.random.default_rng(seed)
    rows = np.concatenate(list(kernels.iter_composition_blocks(N, k)), axis=0)
    coefs = rng.random(T) * math.factorial(3)
    expts = rng.integers(0, max_exp + 1, size=(T, k)).astype(np.int64)
    table = kernels.pow_table(N, max_exp)
    return rows, table, coefs, expts


def _time_kernel(impl, rows, table, coefs, expts, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        kernels.eval_probs(rows, table, coefs, expts, impl=impl)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    cases = [
        ("dense scan N=1000 k=3 T=15", _workload(1000, 3, 15, 4, seed=1)),
        ("coarse scan N=59  k=5 T=35", _workload(59, 5, 35, 3, seed=2)),
        ("mid scan   N=200  k=4 T=20", _workload(200, 4, 20, 3, seed=3)),
    ]
    print(f"{'case':<32}{'rows':>9}{'python':>12}{'cython':>12}{'speedup':>9}")
    for name, (rows, table, coefs, expts) in cases:
        t_py = _time_kernel(_scan_py, rows, table, coefs, expts, args.repeats)
        if compiled is None:
            print(f"{name:<32}{rows.shape[0]:>9}{t_py * 1e3:>10.1f}ms{'n/a':>12}{'n/a':>9}")
            continue
        t_cy = _time_kernel(compiled, rows, table, coefs, expts, args.repeats)
        print(f"{name:<32}{rows.shape[0]:>9}{t_py * 1e3:>10.1f}ms{t_cy * 1e3:>10.1f}ms"
              f"{t_py / t_cy:>8.1f}x")

    # end-to-end: hardest shipped configuration (full-grid search, m=5)
    grid = SupportGrid(0.0, 1.0, 5)
    x = homogeneous_sample(grid, 2, 3)
    saved = kernels._IMPL
    try:
        for impl, label in ((_scan_py, "python"), (compiled, "cython")):
            if impl is None:
                continue
            kernels._IMPL = impl
            t0 = time.perf_counter()
            res = pessimal_bound_oracle(x, LexiHigh(), 0.25, OracleConfig())
            dt = time.perf_counter() - t0
            print(f"oracle lexi-high m=5 n=3 [{label}]: {dt:.2f}s  value={res.value:.6f}")
    finally:
        kernels._IMPL = saved


if __name__ == "__main__":
    main()
