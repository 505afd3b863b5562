#!/usr/bin/env python3
"""Benchmark the kernel lanes against each other.

Times the hot kernels (basis recurrence, compensated operator sums over 1-D
and 2-D grids, de Casteljau evaluation) on the pure-Python lane and, when
built, the compiled lane, and prints the speedup.  Both lanes return
bit-identical results; this script also asserts that on the benchmark inputs.

Usage:  python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from bernakr._kernels import available_backends


def best_of(repeat, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def make_cases():
    rng = np.random.default_rng(42)
    xs_1001 = np.linspace(0.0, 1.0, 1001)
    xs_201 = np.linspace(0.0, 1.0, 201)
    values_60 = rng.standard_normal(61)
    values_2d = rng.standard_normal((61, 61))

    def basis_sweep(mod):
        for x in xs_1001.tolist():
            mod.basis_row(60, x)

    def basis_large(mod):
        mod.basis_row(1600, 0.37)

    def grid_1d(mod):
        return mod.grid_eval_1d(values_60, xs_1001)

    def grid_2d(mod):
        return mod.grid_eval_2d(values_2d, xs_201, xs_201)

    def decasteljau_sweep(mod):
        for x in xs_201.tolist():
            mod.decasteljau(values_60, x)

    return [
        ("basis_row n=60 x 1001 points", basis_sweep, False),
        ("basis_row n=1600 single point", basis_large, False),
        ("grid_eval_1d n=60, 1001-pt grid", grid_1d, True),
        ("grid_eval_2d n=m=60, 201x201 grid", grid_2d, True),
        ("decasteljau n=60 x 201 points", decasteljau_sweep, False),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing repetitions, best-of (default: %(default)s)")
    args = parser.parse_args()

    lanes = available_backends()
    print(f"available lanes: {', '.join(lanes)}")
    if "compiled" not in lanes:
        print("compiled lane not built; timing the pure lane only")

    name_w = 36
    header = f"{'kernel':<{name_w}}" + "".join(f"{lane:>14}" for lane in lanes)
    if len(lanes) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for name, fn, compare in make_cases():
        times = {}
        results = {}
        for lane, mod in lanes.items():
            times[lane], results[lane] = best_of(args.repeat, fn, mod)
        row = f"{name:<{name_w}}" + "".join(f"{times[l] * 1e3:>12.2f}ms" for l in lanes)
        if len(lanes) == 2:
            row += f"{times['pure'] / times['compiled']:>9.1f}x"
        print(row)
        if compare and len(lanes) == 2:
            assert np.array_equal(results["pure"], results["compiled"]), \
                f"lane results differ for {name}"

    if len(lanes) == 2:
        print("\nlane outputs compared bit-for-bit on the grid kernels: identical")


if __name__ == "__main__":
    main()
