#!/usr/bin/env python3
"""Benchmark: compiled enumeration kernel vs the pure-Python fallback.

Counts nonattacking placements for a few (piece, q, n) workloads with both
kernels and reports wall times and the speedup.  Both must produce
identical counts; the script exits nonzero if they ever disagree.

Run after building the extension:

    python benchmarks/bench_kernel.py
"""

import sys
import time

from riderpoly import _pykernel, kernel
from riderpoly.counting import attack_keys
from riderpoly.geometry import BoardPolygon, interior_lattice_points, piece_from_text

WORKLOADS = [
    ("queen", 2, 30),
    ("queen", 3, 12),
    ("queen", 3, 20),
    ("nightrider", 3, 14),
    ("bishop", 4, 8),
]


def run(counter, keys, q, repeats=1):
    best = None
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        value = counter(keys, q)
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return value, best


def main() -> int:
    if not kernel.HAVE_SPEEDUPS:
        print("compiled kernel not built (install with `pip install -e .`); "
              "benchmarking the pure kernel against itself is pointless")
        return 1
    board = BoardPolygon.square()
    print(f"{'workload':28s} {'compiled':>12s} {'pure':>12s} {'speedup':>9s}")
    ok = True
    for name, q, n in WORKLOADS:
        ms = piece_from_text(name)
        points = interior_lattice_points(board, n + 1)
        keys = attack_keys(ms, points)
        fast_value, fast_time = run(
            kernel._speedups.count_nonattacking_subsets, keys, q)
        slow_value, slow_time = run(
            _pykernel.count_nonattacking_subsets, keys, q)
        label = f"{name} q={q} n={n} ({len(points)} cells)"
        if fast_value != slow_value:
            print(f"{label:28s} MISMATCH: {fast_value} != {slow_value}")
            ok = False
            continue
        print(f"{label:28s} {fast_time:11.3f}s {slow_time:11.3f}s "
              f"{slow_time / fast_time:8.1f}x   count={fast_value}")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
