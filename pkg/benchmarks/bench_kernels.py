#!/usr/bin/env python3
"""Benchmark the compiled cop-game kernel against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Solves the full k-cop backward induction on back-circulant graphs with both
implementations, checks they return identical win tables, and reports the
timings side by side.
"""

import argparse
import time

import numpy as np

from lsqgames._kernels import fallback
from lsqgames.copsolver import _closed_masks
from lsqgames.graphs import build_graph
from lsqgames.latin import make_back_circulant

try:
    from lsqgames._kernels import _copgame
except ImportError:
    _copgame = None

CASES = [(4, 3), (5, 2), (5, 3), (6, 3)]


def timed(fn, masks, k, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(masks, k)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"{'instance':>12} {'states':>10} {'python':>10} {'native':>10} {'speedup':>8}")
    for n, k in CASES:
        G = build_graph(make_back_circulant(n))
        masks = _closed_masks(G)
        states = 2 * G.vertex_count ** (k + 1)
        t_py, w_py = timed(fallback.solve_cop_game, masks, k, args.repeat)
        if _copgame is None:
            print(f"{f'B{n} k={k}':>12} {states:>10} {t_py:>9.3f}s {'-':>10} {'-':>8}")
            continue
        t_c, w_c = timed(_copgame.solve_cop_game, masks, k, args.repeat)
        assert np.array_equal(w_py, w_c), "backends disagree"
        print(
            f"{f'B{n} k={k}':>12} {states:>10} {t_py:>9.3f}s {t_c:>9.3f}s "
            f"{t_py / t_c:>7.1f}x"
        )
    if _copgame is None:
        print("\ncompiled kernel not built; run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
