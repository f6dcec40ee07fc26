#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run:  python benchmarks/bench_kernels.py [--repeat N]

The same kernels are selected at import time by the SCHURLAB_NO_NUMBA
environment variable; here both implementations are timed side by side on
representative inputs (S-ring verification counts and color refinement).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from schurlab._kernels import (
    HAS_NUMBA,
    _pair_counts_numba,
    _pair_counts_numpy,
    _refine_signatures_numba,
    _refine_signatures_numpy,
    active_path,
)
from schurlab.groups import build_group
from schurlab.schurity import color_graph
from schurlab.srings import center_sring


def _time(fn, *args, repeat: int) -> float:
    fn(*args)  # warm up (JIT compile)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    cases = []
    for spec in ("dihedral:72", "cyclic:128", "direct(cyclic:16,cyclic:2)"):
        G = build_group(spec)
        A = center_sring(G)
        cases.append((spec, G, A))

    print(f"active kernel path: {active_path()}  (numba available: {HAS_NUMBA})")
    header = f"{'kernel':<22}{'input':<30}{'numpy':>12}{'numba':>12}{'speedup':>9}"
    print(header)
    print("-" * len(header))

    for spec, G, A in cases:
        t_np = _time(_pair_counts_numpy, G.mul, A.block_of, A.rank, repeat=args.repeat)
        if HAS_NUMBA:
            t_nb = _time(_pair_counts_numba, G.mul, A.block_of, A.rank, repeat=args.repeat)
            print(f"{'pair_counts':<22}{spec:<30}{t_np*1e3:>10.2f}ms{t_nb*1e3:>10.2f}ms{t_np/t_nb:>8.1f}x")
        else:
            print(f"{'pair_counts':<22}{spec:<30}{t_np*1e3:>10.2f}ms{'n/a':>12}{'':>9}")

    for spec, G, A in cases:
        col = color_graph(A).col
        colors = np.zeros(G.n, dtype=np.int64)
        t_np = _time(_refine_signatures_numpy, col, colors, repeat=args.repeat)
        if HAS_NUMBA:
            t_nb = _time(_refine_signatures_numba, col, colors, repeat=args.repeat)
            print(f"{'refine_signatures':<22}{spec:<30}{t_np*1e3:>10.2f}ms{t_nb*1e3:>10.2f}ms{t_np/t_nb:>8.1f}x")
        else:
            print(f"{'refine_signatures':<22}{spec:<30}{t_np*1e3:>10.2f}ms{'n/a':>12}{'':>9}")


if __name__ == "__main__":
    main()
