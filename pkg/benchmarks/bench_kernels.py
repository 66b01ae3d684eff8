"""Compiled kernels against the pure-Python fallback on the three hot loops.

    python benchmarks/bench_kernels.py [--census-bound 100000] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from apollonia import _fallback

try:
    from apollonia import _kernels
except ImportError:  # extension not built; only the fallback is timed
    _kernels = None


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--census-bound", type=int, default=100_000)
    ap.add_argument("--height", type=int, default=20_000)
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    base = (-1, 2, 2, 3)
    rng = np.random.default_rng(0)
    pts = rng.integers(-40, 61, size=(2 * args.points, 4))
    pts = pts[pts.sum(axis=1) > 0][: args.points].astype(np.int64)
    cases = {
        f"census maxima, X={args.census_bound}": lambda m: m.census_maxima(base, args.census_bound),
        f"orbit exp sum, H={args.height}": lambda m: m.orbit_exp_sum(base, (0.3, 0.4, 0.5, 0.6), args.height),
        f"classify {len(pts)} integer points": lambda m: m.classify_batch(pts, 200),
    }
    print(f"{'case':<38} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases.items():
        py = _best(lambda: fn(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:<38} {py:>10.3f} {'-':>10} {'-':>8}")
            continue
        cy = _best(lambda: fn(_kernels), args.repeat)
        print(f"{name:<38} {py:>10.3f} {cy:>10.4f} {py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
