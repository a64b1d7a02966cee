"""Pure-Python enumeration kernel.

Counts q-subsets of board cells that are pairwise nonattacking.  Cells are
identified by their per-move attack keys: cells p and p' are attacked
along move r exactly when ``keys[r][p] == keys[r][p']``, so the inner test
is a handful of set lookups.  The compiled kernel in ``_speedups`` mirrors
this function exactly; results are identical Python integers.
"""

from __future__ import annotations


def count_nonattacking_subsets(keys, q: int) -> int:
    """Number of q-subsets of cells with no two cells sharing any attack key.

    ``keys`` is a list with one sequence of integer keys per move, all of
    the same length (the number of cells).
    """
    if q == 0:
        return 1
    npts = len(keys[0]) if keys else 0
    if q == 1:
        return npts
    if npts < q:
        return 0
    nmoves = len(keys)
    cols = list(zip(*keys))
    used = [set() for _ in range(nmoves)]
    moves = range(nmoves)

    def extend(start: int, depth: int) -> int:
        total = 0
        last = npts - (q - depth)
        for idx in range(start, last + 1):
            col = cols[idx]
            for r in moves:
                if col[r] in used[r]:
                    break
            else:
                if depth + 1 == q:
                    total += 1
                else:
                    for r in moves:
                        used[r].add(col[r])
                    total += extend(idx + 1, depth + 1)
                    for r in moves:
                        used[r].remove(col[r])
        return total

    return extend(0, 0)
