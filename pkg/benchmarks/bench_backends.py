#!/usr/bin/env python3
"""Benchmark the compiled trial loop against the vectorized numpy fallback.

Runs identical workloads through both kernels, checks the outputs agree
bit-for-bit, and reports throughput.  Usage:

    python benchmarks/bench_backends.py [--trials 200000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from targetrace.engine import _fallback

try:
    from targetrace.engine import _core
except ImportError:
    _core = None

# (label, p_tp, p_fp, d, kind, threshold, cap)
WORKLOADS = [
    ("first-click race, m=1000, d=2", 0.1, 1e-3, 2, 0, 1, 0),
    ("first-click race, m=10, d=5", 0.3, 0.1, 5, 0, 1, 0),
    ("5-click race, m=100, d=5", 0.25, 0.01, 5, 0, 5, 0),
    ("truncated first click, p_fp=0", 0.1, 0.0, 5, 0, 1, 20),
    ("fixed shots, n_s=10", 0.3, 0.0, 2, 1, 1, 10),
]


def run(kernel, args, trials, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernel.simulate_block(*args, 12345, 0, trials)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=3)
    opts = parser.parse_args()

    print(f"{'workload':38s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, p_tp, p_fp, d, kind, threshold, cap in WORKLOADS:
        args = (p_tp, p_fp, d, kind, threshold, cap)
        t_np, out_np = run(_fallback, args, opts.trials, opts.repeat)
        if _core is None:
            print(f"{label:38s} {t_np:9.3f}s {'n/a':>10s} {'n/a':>8s}")
            continue
        t_cy, out_cy = run(_core, args, opts.trials, opts.repeat)
        assert np.array_equal(out_np[0], out_cy[0]) and np.array_equal(out_np[1], out_cy[1]), (
            f"backend mismatch on {label!r}"
        )
        print(f"{label:38s} {t_np:9.3f}s {t_cy:9.3f}s {t_np / t_cy:7.1f}x")
    if _core is None:
        print("\ncompiled core not built; only the numpy fallback was timed")
    else:
        print(f"\n{opts.trials} trials per workload; outputs verified identical")


if __name__ == "__main__":
    main()
