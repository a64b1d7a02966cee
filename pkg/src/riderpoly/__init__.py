"""Exact counting of nonattacking rider placements on dilated polygonal boards.

The package counts placements of q identical pieces with unbounded
straight-line moves (queen, rook, bishop, nightrider, or any custom move
set) on rational convex boards, three independent ways:

* brute-force enumeration over board cells (the ground-truth oracle),
* inclusion-exclusion over the move hyperplane arrangement's
  intersection semilattice, and
* exact quasipolynomial interpolation of count tables, whose value at
  n = -1 counts combinatorial configuration types.

It also computes the period-bound chain: observed period, inside-out
vertex denominator, and subdeterminant lcm bounds.
"""

from .geometry import (
    BoardPolygon,
    Configuration,
    Move,
    MoveSet,
    attacks,
    board_from_text,
    interior_lattice_points,
    piece_from_text,
    reachable_by_two_moves,
    validate_move_set,
)

__all__ = [
    "BoardPolygon",
    "Configuration",
    "Move",
    "MoveSet",
    "attacks",
    "board_from_text",
    "interior_lattice_points",
    "piece_from_text",
    "reachable_by_two_moves",
    "validate_move_set",
]

__version__ = "0.1.0"
