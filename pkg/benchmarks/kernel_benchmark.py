"""Benchmark the compiled phase-space kernels against the numpy reference.

Times the two hot paths: filling a Wigner grid for one cat state, and
averaging the post-collision Wigner density of many sampled collisions
over a grid (the dominant cost of sweep experiments).

Usage: python benchmarks/kernel_benchmark.py [--grid 256] [--cats 20000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from tracergas._kernels import _reference

try:
    from tracergas._kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--grid", type=int, default=256, help="grid nodes per axis")
    parser.add_argument("--cats", type=int, default=20000, help="sampled cats for the mean kernel")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x = np.linspace(-30, 30, args.grid)
    p = np.linspace(-3, 3, args.grid)
    xg, pg = (np.ascontiguousarray(a) for a in np.meshgrid(x, p, indexing="ij"))

    n = args.cats
    cats = (
        rng.uniform(-20, 20, n),
        rng.uniform(-2, 2, n),
        rng.uniform(-20, 20, n),
        rng.uniform(-2, 2, n),
        rng.uniform(0, 1, n),
        rng.uniform(0, 2 * np.pi, n),
    )

    # the mean kernel is quadratic in problem size; keep the benchmark honest
    # but bounded by restricting it to a quarter-resolution grid
    small = args.grid // 4
    xs = np.ascontiguousarray(xg[:small, :small])
    ps = np.ascontiguousarray(pg[:small, :small])

    cases = [
        (
            f"wigner grid fill ({args.grid}x{args.grid})",
            lambda impl: impl.wigner_on_points(xg, pg, 15.0, 0.0, 0.0, 1.5, 1.0, 0.0, 4.0, 1.0),
        ),
        (
            f"per-sample point eval ({n} cats)",
            lambda impl: impl.wigner_cats_at_point(0.0, 0.0, *cats, 4.0, 1.0),
        ),
        (
            f"averaged grid ({n} cats x {small}x{small})",
            lambda impl: impl.wigner_mean_on_points(xs, ps, *cats, 4.0, 1.0),
        ),
    ]

    print(f"{'kernel':42s} {'reference':>12s} {'compiled':>12s} {'speedup':>9s}")
    for label, call in cases:
        t_ref = time_call(call, _reference, repeat=args.repeat)
        if _fast is None:
            print(f"{label:42s} {t_ref * 1e3:10.1f} ms {'-':>12s} {'-':>9s}")
            continue
        t_fast = time_call(call, _fast, repeat=args.repeat)
        print(
            f"{label:42s} {t_ref * 1e3:10.1f} ms {t_fast * 1e3:10.1f} ms "
            f"{t_ref / t_fast:8.1f}x"
        )
    if _fast is None:
        print("\ncompiled kernels not built; showing the reference backend only")


if __name__ == "__main__":
    main()
