#!/usr/bin/env python3
"""Benchmark the compiled enumeration kernels against the pure-Python twins.

Run from the repository root after installing the package:

    python benchmarks/bench_kernels.py [--full]

`--full` adds the heaviest case (the 4x4 table census, ~0.5 s pure).  Both
backends must produce identical histograms; the benchmark asserts it.
"""

from __future__ import annotations

import argparse
import time

from detmoments import _pykernels

try:
    from detmoments import _ckernels
except ImportError:
    _ckernels = None


def timed(fn, *args, repeats=3, **kwargs):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args, **kwargs)
        best = min(best, time.perf_counter() - t0)
    return best, result


CASES = [
    ("det  4x4 +-1 (2^16 states)", "matrix_power_histogram",
     ((1, -1), 4), {}),
    ("per  4x4 +-1 (2^16 states)", "matrix_power_histogram",
     ((1, -1), 4), {"permanent": True}),
    ("det  5x5 +-1, symmetry (2^16 states)", "matrix_power_histogram",
     ((1, -1), 5), {"fix_first": True}),
    ("per  5x5 +-1, symmetry (2^16 states)", "matrix_power_histogram",
     ((1, -1), 5), {"fix_first": True, "permanent": True}),
    ("det  4x4 two-point (2^16 weighted states)", "matrix_power_histogram",
     ((4, -1), 4), {}),
    ("table census 3x3", "table_type_histogram", (3,), {"allow_three": True}),
]

FULL_CASES = [
    ("table census 4x4", "table_type_histogram", (4,), {"allow_three": True}),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true", help="include the heaviest cases")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernels not available; run `pip install -e .` first")

    cases = CASES + (FULL_CASES if args.full else [])
    name_w = max(len(name) for name, *_ in cases)
    print(f"{'case'.ljust(name_w)}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, fn_name, fn_args, fn_kwargs in cases:
        t_py, h_py = timed(getattr(_pykernels, fn_name), *fn_args,
                           repeats=args.repeats, **fn_kwargs)
        if _ckernels is None:
            print(f"{name.ljust(name_w)}  {t_py*1e3:9.1f}ms  {'-':>10}  {'-':>8}")
            continue
        t_cy, h_cy = timed(getattr(_ckernels, fn_name), *fn_args,
                           repeats=args.repeats, **fn_kwargs)
        assert h_py == h_cy, f"backend mismatch in {name}"
        print(f"{name.ljust(name_w)}  {t_py*1e3:9.1f}ms  {t_cy*1e3:9.1f}ms  {t_py/t_cy:7.1f}x")


if __name__ == "__main__":
    main()
