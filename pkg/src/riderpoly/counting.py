"""Brute-force counting of nonattacking placements and configuration types.

This module is the ground-truth oracle for everything symbolic: it counts
by explicit enumeration of lattice cells, with incremental attack pruning,
and never returns a partial answer (resource caps raise
``CapacityError`` instead).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial

from . import kernel
from .errors import AttackingConfigurationError, CapacityError
from .geometry import BoardPolygon, Configuration, MoveSet, interior_lattice_points

DEFAULT_BUDGET = 10**10

METHOD_BRUTE_FORCE = "brute_force"
METHOD_RECONSTRUCTION = "reconstruction"


def attack_keys(ms: MoveSet, points) -> list[list[int]]:
    """Per-move attack keys: equal keys mark cells on a common move line."""
    return [[m.d * x - m.c * y for (x, y) in points] for m in ms]


def _check_budget(npts: int, q: int, budget: int, n: int) -> None:
    envelope = npts ** min(q, 3)
    if envelope > budget:
        raise CapacityError(
            f"search envelope {envelope} exceeds budget {budget} at n={n}",
            n=n, envelope=envelope, budget=budget)


def count_nonattacking(ms: MoveSet, board: BoardPolygon, q: int, n: int,
                       budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """(labelled, unlabelled) counts of nonattacking placements of q pieces.

    Places pieces on the integer points strictly inside the (n+1)-fold
    dilate of the board.  q = 0 counts the empty placement once.
    """
    if q < 0:
        raise ValueError("q must be nonnegative")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if q == 0:
        return 1, 1
    points = interior_lattice_points(board, n + 1)
    _check_budget(len(points), q, budget, n)
    unlabelled = kernel.count_nonattacking_subsets(attack_keys(ms, points), q)
    return factorial(q) * unlabelled, unlabelled


@dataclass
class CountTable:
    """Exact counts per board size, with provenance.

    ``rows`` maps n to (labelled, unlabelled); the labelled column always
    equals q! times the unlabelled one.
    """

    piece: str
    board: BoardPolygon
    q: int
    rows: dict[int, tuple[int, int]] = field(default_factory=dict)
    method: str = METHOD_BRUTE_FORCE

    def __post_init__(self):
        fq = factorial(self.q)
        for n, (lab, unlab) in self.rows.items():
            if lab != fq * unlab or unlab < 0:
                raise ValueError(f"inconsistent row at n={n}: {lab} != {self.q}!*{unlab}")

    def ns(self) -> list[int]:
        return sorted(self.rows)

    def unlabelled(self, n: int) -> int:
        return self.rows[n][1]

    def labelled(self, n: int) -> int:
        return self.rows[n][0]

    def column(self, name: str) -> dict[int, int]:
        idx = {"labelled": 0, "unlabelled": 1}[name]
        return {n: pair[idx] for n, pair in self.rows.items()}

    def to_csv(self) -> str:
        lines = ["n,labelled,unlabelled,method"]
        for n in self.ns():
            lab, unlab = self.rows[n]
            lines.append(f"{n},{lab},{unlab},{self.method}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "piece": self.piece,
            "board": self.board.as_text(),
            "q": self.q,
            "method": self.method,
            "rows": [
                {"n": n, "labelled": str(self.rows[n][0]),
                 "unlabelled": str(self.rows[n][1])}
                for n in self.ns()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def count_series(ms: MoveSet, board: BoardPolygon, q: int,
                 n_from: int, n_to: int, budget: int = DEFAULT_BUDGET,
                 threads: int = 1) -> CountTable:
    """One count_nonattacking row per n in [n_from, n_to].

    Rows are independent, so they may be evaluated in parallel; the result
    never depends on the schedule.  Capacity errors carry the offending n.
    """
    if n_from > n_to:
        raise ValueError("n_from must not exceed n_to")
    ns = list(range(n_from, n_to + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda n: count_nonattacking(ms, board, q, n, budget), ns))
    else:
        results = [count_nonattacking(ms, board, q, n, budget) for n in ns]
    return CountTable(piece=ms.label, board=board, q=q,
                      rows=dict(zip(ns, results)), method=METHOD_BRUTE_FORCE)


def iter_nonattacking(ms: MoveSet, board: BoardPolygon, q: int, n: int,
                      budget: int = DEFAULT_BUDGET):
    """Yield every nonattacking q-subset of cells, as sorted position tuples."""
    if q < 1:
        raise ValueError("q must be positive")
    points = interior_lattice_points(board, n + 1)
    _check_budget(len(points), q, budget, n)
    keys = attack_keys(ms, points)
    npts = len(points)
    nmoves = len(keys)
    cols = list(zip(*keys)) if npts else []
    used = [set() for _ in range(nmoves)]
    chosen: list[int] = []

    def extend(start: int):
        depth = len(chosen)
        last = npts - (q - depth)
        for idx in range(start, last + 1):
            col = cols[idx]
            if any(col[r] in used[r] for r in range(nmoves)):
                continue
            chosen.append(idx)
            if depth + 1 == q:
                yield tuple(points[i] for i in chosen)
            else:
                for r in range(nmoves):
                    used[r].add(col[r])
                yield from extend(idx + 1)
                for r in range(nmoves):
                    used[r].remove(col[r])
            chosen.pop()

    yield from extend(0)


@dataclass(frozen=True)
class ConfigType:
    """Combinatorial type of a labelled nonattacking configuration.

    ``left[i][r]`` is a bitmask over piece indices j with piece j strictly
    on the left side of the r-th move line through piece i.
    """

    left: tuple[tuple[int, ...], ...]

    @property
    def q(self) -> int:
        return len(self.left)

    def lists(self) -> list[list[set[int]]]:
        """The left-side lists as explicit index sets."""
        return [[{j for j in range(self.q) if mask >> j & 1} for mask in row]
                for row in self.left]

    def relabelled(self, perm) -> "ConfigType":
        """Apply a piece relabelling i -> perm[i]."""
        q = self.q
        rows = [None] * q
        for i, row in enumerate(self.left):
            rows[perm[i]] = tuple(
                _remap_mask(mask, perm, q) for mask in row)
        return ConfigType(tuple(rows))

    def canonical(self) -> "ConfigType":
        """Least relabelling; identical for configurations of one unlabelled type."""
        best = min(self.relabelled(perm).left
                   for perm in permutations(range(self.q)))
        return ConfigType(best)


def _remap_mask(mask: int, perm, q: int) -> int:
    out = 0
    for j in range(q):
        if mask >> j & 1:
            out |= 1 << perm[j]
    return out


def labelled_type_of(cfg: Configuration, ms: MoveSet) -> ConfigType:
    """The left-side list family of a nonattacking labelled configuration.

    Rejects attacking input: equal configurations lie in no open region of
    the move arrangement.
    """
    pts = cfg.positions
    q = len(pts)
    keys = [[m.d * x - m.c * y for (x, y) in pts] for m in ms]
    for a in range(q):
        for b in range(a + 1, q):
            if pts[a] == pts[b] or any(col[a] == col[b] for col in keys):
                raise AttackingConfigurationError(
                    f"pieces {a} and {b} attack each other")
    rows = []
    for i in range(q):
        row = []
        for col in keys:
            mask = 0
            for j in range(q):
                if j != i and col[j] > col[i]:
                    mask |= 1 << j
            row.append(mask)
        rows.append(tuple(row))
    return ConfigType(tuple(rows))


def census_types(ms: MoveSet, board: BoardPolygon, q: int, n: int,
                 budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """(labelled_types, unlabelled_types) realized at board size n.

    Enumerates every nonattacking placement, collects the distinct
    combinatorial types of its labelled orderings, and groups them into
    relabelling orbits.  Both counts are exact censuses: each orbit is
    expanded into its individual labelled types.
    """
    canon_cache: dict[tuple, tuple] = {}
    unlabelled: set[tuple] = set()
    labelled: set[tuple] = set()
    perms = list(permutations(range(q)))
    for positions in iter_nonattacking(ms, board, q, n, budget=budget):
        ctype = labelled_type_of(Configuration(positions), ms)
        canon = canon_cache.get(ctype.left)
        if canon is None:
            orbit = {ctype.relabelled(perm).left for perm in perms}
            canon = min(orbit)
            for member in orbit:
                canon_cache[member] = canon
            labelled.update(orbit)
        unlabelled.add(canon)
    return len(labelled), len(unlabelled)
