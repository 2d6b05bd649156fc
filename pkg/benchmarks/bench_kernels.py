#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-NumPy sampling kernels.

Run:  python3 benchmarks/bench_kernels.py [n_draws]
"""

import sys
import time

from stable_lab import _kernels_py

try:
    from stable_lab import _kernels
except ImportError:
    _kernels = None

KEY = _kernels_py.derive_key(20260815, 0)


def rate(fn, n, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(0, n)
        best = min(best, time.perf_counter() - t0)
    return n / best / 1e6


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    cases = [
        ("uniform", lambda m: lambda a, b: m.uniform_draws(*KEY, a, b)),
        ("exponential", lambda m: lambda a, b: m.exp_draws(*KEY, a, b)),
        ("stable a=0.5", lambda m: lambda a, b: m.stable_draws(*KEY, a, b, 0.5)),
        ("stable a=0.2", lambda m: lambda a, b: m.stable_draws(*KEY, a, b, 0.2)),
        ("kanter a=0.5", lambda m: lambda a, b: m.kanter_v_draws(*KEY, a, b, 0.5)),
        ("gamma 0.47", lambda m: lambda a, b: m.gamma_draws(*KEY, a, b, 0.47)),
        ("gamma 4.2", lambda m: lambda a, b: m.gamma_draws(*KEY, a, b, 4.2)),
    ]
    print(f"{'kernel':<14} {'numpy M/s':>10} {'cython M/s':>11} {'speedup':>8}")
    for name, make in cases:
        py = rate(make(_kernels_py), n)
        if _kernels is not None:
            cy = rate(make(_kernels), n)
            print(f"{name:<14} {py:>10.1f} {cy:>11.1f} {cy / py:>7.2f}x")
        else:
            print(f"{name:<14} {py:>10.1f} {'-':>11} {'-':>8}")
    if _kernels is None:
        print("\ncompiled extension not available; showing NumPy backend only")


if __name__ == "__main__":
    main()
