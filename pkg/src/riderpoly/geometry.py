"""Pieces, boards, and primitive attack geometry.

A piece is a set of basic moves: coprime, pairwise non-parallel integer
vectors.  A board is a bounded convex polygon with rational data given by
boundary inequalities ``a*x + b*y <= beta``; the playable cells at size
parameter ``n`` are the integer points strictly inside the ``(n+1)``-fold
dilate.

Everything is exact: plain integers for moves, lattice points and attack
tests, ``fractions.Fraction`` for board geometry.  All values are
immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Sequence

from .errors import BoardError, MoveSetError

Point = tuple[int, int]


@dataclass(frozen=True)
class Move:
    """A basic move vector ``(c, d)``, in lowest terms."""

    c: int
    d: int

    def __post_init__(self):
        if self.c == 0 and self.d == 0:
            raise MoveSetError("move (0, 0) is not allowed")
        if gcd(abs(self.c), abs(self.d)) != 1:
            raise MoveSetError(
                f"move ({self.c}, {self.d}) is not in lowest terms")

    @property
    def perp(self) -> Point:
        """The normal ``(d, -c)`` of the move line."""
        return (self.d, -self.c)

    @property
    def slope_label(self) -> str:
        """Slope written ``d/c``, the conventional hyperplane label."""
        return f"{self.d}/{self.c}"

    def key(self, x: int, y: int) -> int:
        """Value of ``d*x - c*y``; constant exactly along this move's lines."""
        return self.d * x - self.c * y


@dataclass(frozen=True)
class MoveSet:
    """An ordered set of basic moves with pairwise distinct slopes."""

    moves: tuple[Move, ...]
    name: str | None = None

    def __post_init__(self):
        if not self.moves:
            raise MoveSetError("a piece needs at least one move")
        seen = set()
        for m in self.moves:
            rep = _canonical_direction(m.c, m.d)
            if rep in seen:
                raise MoveSetError(f"parallel moves: duplicate slope {m.slope_label}")
            seen.add(rep)

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    @property
    def label(self) -> str:
        return self.name or ";".join(f"{m.c},{m.d}" for m in self.moves)


def _canonical_direction(c: int, d: int) -> Point:
    """Flip signs so c > 0, or c = 0 and d > 0."""
    if c < 0 or (c == 0 and d < 0):
        return (-c, -d)
    return (c, d)


def validate_move_set(raw: Iterable[Sequence[int]], name: str | None = None) -> MoveSet:
    """Build a MoveSet from raw integer pairs.

    Each pair is normalized to the canonical representative of its slope
    (sign flipped so that c > 0, or c = 0 and d > 0).  Rejects the zero
    vector, non-coprime coordinates, and repeated slopes.
    """
    pairs = list(raw)
    if not pairs:
        raise MoveSetError("empty move list")
    moves = []
    for pair in pairs:
        c, d = int(pair[0]), int(pair[1])
        moves.append(Move(*_canonical_direction(c, d)))
    return MoveSet(tuple(moves), name=name)


PRESET_MOVES = {
    "queen": [(1, 0), (1, 1), (0, 1), (1, -1)],
    "rook": [(1, 0), (0, 1)],
    "bishop": [(1, 1), (1, -1)],
    "nightrider": [(2, 1), (1, 2), (2, -1), (1, -2)],
    "semiqueen": [(1, 0), (0, 1), (1, 1)],
}


def piece_from_text(text: str) -> MoveSet:
    """Parse a preset name (``queen``) or a move list (``c1,d1;c2,d2;...``)."""
    name = text.strip().lower()
    if name in PRESET_MOVES:
        return validate_move_set(PRESET_MOVES[name], name=name)
    moves = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise MoveSetError(f"bad move syntax: {chunk!r}")
        moves.append((int(parts[0]), int(parts[1])))
    return validate_move_set(moves)


class BoardPolygon:
    """A bounded, full-dimensional convex polygon with rational data.

    Constructed from boundary inequalities ``a*x + b*y <= beta``; the
    vertex list is computed by pairwise intersection plus feasibility
    filtering.  Redundant inequalities are rejected so that every
    inequality supports a facet.
    """

    __slots__ = ("inequalities", "vertices", "_text")

    def __init__(self, inequalities, text: str | None = None):
        normalized = []
        for a, b, beta in inequalities:
            a, b, beta = Fraction(a), Fraction(b), Fraction(beta)
            if a == 0 and b == 0:
                raise BoardError("inequality with zero normal")
            scale = Fraction(a.denominator * b.denominator,
                             gcd(a.denominator * b.denominator, 1))
            a, b, beta = a * scale, b * scale, beta * scale
            g = gcd(int(a), int(b))
            normalized.append((int(a) // g, int(b) // g, beta / g))
        self.inequalities = tuple(normalized)
        self.vertices = self._compute_vertices()
        self._text = text

    def _compute_vertices(self):
        ineqs = self.inequalities
        if len(ineqs) < 3:
            raise BoardError("a bounded polygon needs at least 3 inequalities")
        self._check_bounded()
        points = set()
        for i in range(len(ineqs)):
            a1, b1, c1 = ineqs[i]
            for j in range(i + 1, len(ineqs)):
                a2, b2, c2 = ineqs[j]
                det = a1 * b2 - a2 * b1
                if det == 0:
                    continue
                x = Fraction(c1 * b2 - c2 * b1, det)
                y = Fraction(a1 * c2 - a2 * c1, det)
                if all(a * x + b * y <= c for a, b, c in ineqs):
                    points.add((x, y))
        hull = _convex_hull(sorted(points))
        if len(hull) < 3 or _shoelace(hull) == 0:
            raise BoardError("polygon is not full-dimensional")
        for a, b, c in ineqs:
            tight = sum(1 for x, y in hull if a * x + b * y == c)
            if tight < 2:
                raise BoardError(
                    f"inequality {a}*x + {b}*y <= {c} does not support a facet "
                    "(redundant or degenerate)")
        return tuple(hull)

    def _check_bounded(self):
        # The recession cone {dir : a*dx + b*dy <= 0 for all rows} must be
        # trivial; any nontrivial cone contains a direction perpendicular
        # to some normal, or the negation of a normal.
        candidates = []
        for a, b, _ in self.inequalities:
            candidates.extend([(-b, a), (b, -a), (-a, -b)])
        for dx, dy in candidates:
            if (dx, dy) == (0, 0):
                continue
            if all(a * dx + b * dy <= 0 for a, b, _ in self.inequalities):
                raise BoardError("polygon is unbounded")

    @property
    def area(self) -> Fraction:
        """Exact area via the shoelace formula on the hull vertices."""
        return _shoelace(self.vertices) / 2

    @property
    def denominator(self) -> int:
        """lcm of the denominators of all vertex coordinates."""
        result = 1
        for x, y in self.vertices:
            result = _lcm(result, _lcm(x.denominator, y.denominator))
        return result

    def scaled_strict_rows(self, t: int):
        """Integer triples (A, B, C) with the strict interior of t*B given by A*x + B*y < C."""
        rows = []
        for a, b, beta in self.inequalities:
            q = beta.denominator
            rows.append((a * q, b * q, t * beta.numerator))
        return rows

    def as_text(self) -> str:
        if self._text:
            return self._text
        return "poly:" + ";".join(
            f"{a},{b},{_frac_text(c)}" for a, b, c in self.inequalities)

    def __eq__(self, other):
        return isinstance(other, BoardPolygon) and self.inequalities == other.inequalities

    def __hash__(self):
        return hash(self.inequalities)

    def __repr__(self):
        return f"BoardPolygon({self.as_text()!r})"

    @classmethod
    def square(cls) -> "BoardPolygon":
        return cls([(-1, 0, 0), (0, -1, 0), (1, 0, 1), (0, 1, 1)], text="square")

    @classmethod
    def rect(cls, a, b) -> "BoardPolygon":
        a, b = Fraction(a), Fraction(b)
        if a <= 0 or b <= 0:
            raise BoardError("rectangle sides must be positive")
        return cls([(-1, 0, 0), (0, -1, 0), (1, 0, a), (0, 1, b)],
                   text=f"rect:{_frac_text(a)},{_frac_text(b)}")


def board_from_text(text: str) -> BoardPolygon:
    """Parse ``square``, ``rect:a,b``, or ``poly:a1,b1,beta1;...``."""
    spec = text.strip()
    if spec == "square":
        return BoardPolygon.square()
    if spec.startswith("rect:"):
        parts = spec[5:].split(",")
        if len(parts) != 2:
            raise BoardError(f"bad rectangle syntax: {text!r}")
        return BoardPolygon.rect(Fraction(parts[0]), Fraction(parts[1]))
    if spec.startswith("poly:"):
        ineqs = []
        for chunk in spec[5:].split(";"):
            parts = chunk.split(",")
            if len(parts) != 3:
                raise BoardError(f"bad inequality syntax: {chunk!r}")
            ineqs.append((Fraction(parts[0]), Fraction(parts[1]), Fraction(parts[2])))
        return BoardPolygon(ineqs, text=spec)
    raise BoardError(f"unknown board syntax: {text!r}")


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _convex_hull(points):
    """Monotone-chain hull, counterclockwise, exact arithmetic."""
    if len(points) <= 2:
        return list(points)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in points:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(points):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _shoelace(vertices) -> Fraction:
    total = Fraction(0)
    for i, (x1, y1) in enumerate(vertices):
        x2, y2 = vertices[(i + 1) % len(vertices)]
        total += x1 * y2 - x2 * y1
    return abs(total)


def interior_lattice_points(board: BoardPolygon, t: int) -> list[Point]:
    """Integer points strictly inside the t-fold dilate, in lexicographic order."""
    if t < 1:
        raise ValueError("dilation factor must be a positive integer")
    rows = board.scaled_strict_rows(t)
    xs = [t * v[0] for v in board.vertices]
    ys = [t * v[1] for v in board.vertices]
    x_lo, x_hi = ceil(min(xs)), floor(max(xs))
    y_lo, y_hi = ceil(min(ys)), floor(max(ys))
    points = []
    for x in range(x_lo, x_hi + 1):
        for y in range(y_lo, y_hi + 1):
            if all(a * x + b * y < c for a, b, c in rows):
                points.append((x, y))
    return points


def attacks(zi: Point, zj: Point, ms: MoveSet) -> bool:
    """Whether pieces at zi and zj attack each other (coincidence counts)."""
    if zi == zj:
        return True
    dx = zj[0] - zi[0]
    dy = zj[1] - zi[1]
    for m in ms:
        if m.d * dx - m.c * dy == 0:
            return True
    return False


def reachable_by_two_moves(m1: Move, m2: Move, delta: Sequence[int]) -> bool:
    """Whether a sequence of m1/m2 moves translates a piece by ``delta``.

    Possible exactly when both components of delta are divisible by
    det(m1, m2).
    """
    det = m1.c * m2.d - m1.d * m2.c
    if det == 0:
        raise MoveSetError("moves are parallel")
    det = abs(det)
    return delta[0] % det == 0 and delta[1] % det == 0


@dataclass(frozen=True)
class Configuration:
    """Positions of q pieces; ``labelled`` records whether order matters."""

    positions: tuple[Point, ...]
    labelled: bool = True

    def __len__(self) -> int:
        return len(self.positions)
