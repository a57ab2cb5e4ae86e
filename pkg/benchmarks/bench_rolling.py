#!/usr/bin/env python3
"""Benchmark the rolling-moment kernels: numba @njit vs pure numpy.

Usage: python benchmarks/bench_rolling.py [--sizes 10000,100000,1000000]
       [--window 250] [--repeats 5]

The numba path pays a one-off JIT compile on first call (cached on disk
afterward); timings below exclude it by warming both kernels first.
"""

import argparse
import os
import time

import numpy as np

from sigmatail import _kernels


def time_kernel(mode, x, window, repeats):
    os.environ[_kernels.ENV_VAR] = mode
    _kernels.rolling_moments(x[: min(x.size, 2048)], window)  # warm-up / compile
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        means, stds = _kernels.rolling_moments(x, window)
        best = min(best, time.perf_counter() - t0)
    return best, means, stds


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10000,100000,1000000")
    ap.add_argument("--window", type=int, default=250)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    modes = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; benchmarking the numpy kernel only")

    rng = np.random.default_rng(0)
    print(f"{'n':>10}  {'window':>6}  " + "  ".join(f"{m:>12}" for m in modes)
          + ("  speedup" if len(modes) == 2 else ""))
    for n in sizes:
        x = rng.normal(0.0005, 0.012, n)
        times = {}
        results = {}
        for mode in modes:
            times[mode], *results_pair = time_kernel(mode, x, args.window, args.repeats)
            results[mode] = results_pair
        row = f"{n:>10}  {args.window:>6}  " + "  ".join(
            f"{times[m] * 1e3:>10.2f}ms" for m in modes)
        if len(modes) == 2:
            row += f"  {times['numpy'] / times['numba']:>6.2f}x"
            dev = max(
                np.nanmax(np.abs(results["numpy"][0] - results["numba"][0])),
                np.nanmax(np.abs(results["numpy"][1] - results["numba"][1])),
            )
            row += f"  (max |diff| {dev:.1e})"
        print(row)
    os.environ.pop(_kernels.ENV_VAR, None)


if __name__ == "__main__":
    main()
