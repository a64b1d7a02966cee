from fractions import Fraction as F

import pytest

from riderpoly import bounds
from riderpoly.errors import CapacityError, MoveSetError
from riderpoly.geometry import board_from_text, piece_from_text


class TestGrandMatrix:
    def test_queen_q2_top_block(self, queen, square):
        gm = bounds.grand_matrix(queen, square, 2)
        assert len(gm.top) == 4
        # first move (1,0): perp (0,-1) at piece 0, negated at piece 1
        assert gm.top[0] == (0, -1, 0, 1)

    def test_bishop_q3_top_size(self, bishop, square):
        assert len(bounds.grand_matrix(bishop, square, 3).top) == 6

    def test_rect_bottom_rows_for_single_piece(self, rook):
        board = board_from_text("rect:3,2")
        gm = bounds.grand_matrix(rook, board, 1)
        rows = set(zip(gm.bottom, gm.rhs_bottom))
        assert rows == {((-1, 0), 0), ((0, -1), 0), ((1, 0), 3), ((0, 1), 2)}

    def test_square_bottom_is_signed_identity(self, queen, square):
        gm = bounds.grand_matrix(queen, square, 2)
        as_set = {tuple(row) for row in gm.bottom}
        identity = set()
        for col in range(4):
            plus = [0] * 4
            plus[col] = 1
            minus = [0] * 4
            minus[col] = -1
            identity.add(tuple(plus))
            identity.add(tuple(minus))
        assert as_set == identity

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_kronecker_identity(self, nightrider, q):
        assert bounds.attack_rows(nightrider, q) == bounds.kron(
            bounds.eta_transpose(q), bounds.moves_matrix(nightrider))


class TestDenominator:
    @pytest.mark.parametrize("name,q,expected", [
        ("queen", 2, 1), ("queen", 3, 2),
        ("nightrider", 2, 2), ("nightrider", 3, 60),
        ("bishop", 2, 1), ("bishop", 3, 2), ("rook", 2, 1),
    ])
    def test_square_board_values(self, name, q, expected, square):
        ms = piece_from_text(name)
        assert bounds.denominator(ms, square, q) == expected

    def test_budget_abort(self, nightrider, square):
        with pytest.raises(CapacityError):
            bounds.denominator(nightrider, square, 4)

    def test_vertices_feasible_and_exact(self, queen, square):
        gm = bounds.grand_matrix(queen, square, 2)
        rows = gm.rows_with_rhs

        seen = []

        def feasible(point):
            for piece in range(2):
                x, y = point[2 * piece], point[2 * piece + 1]
                if not (0 <= x <= 1 and 0 <= y <= 1):
                    return False
            seen.append(point)
            return True

        for point in bounds.scan_vertices([], rows, 4, feasible):
            assert all(0 <= c <= 1 for c in point)
        assert seen  # the scan visits actual vertices


class TestLcmd:
    def test_move_matrix_nightrider(self, nightrider):
        assert bounds.lcmd_of_matrix(bounds.moves_matrix(nightrider)) == 60

    @pytest.mark.parametrize("name,q,expected", [
        ("queen", 2, 2), ("queen", 3, 4),
        ("nightrider", 2, 60), ("nightrider", 3, 3600),
    ])
    def test_attack_block_values(self, name, q, expected):
        ms = piece_from_text(name)
        assert bounds.lcmd_direct(bounds.attack_rows(ms, q)) == expected

    def test_budget_abort(self, nightrider):
        with pytest.raises(CapacityError):
            bounds.lcmd_direct(bounds.attack_rows(nightrider, 4))

    def test_order_cap(self):
        matrix = [(2, 0), (0, 3)]
        assert bounds.lcmd_direct(matrix, order=1) == 6
        assert bounds.lcmd_direct(matrix, order=2) == 6


class TestClosedForm:
    def test_bishop_powers_of_two(self, bishop):
        values = [bounds.lcmd_closed_form_two_moves(bishop, q)
                  for q in range(2, 7)]
        assert values == [2, 4, 8, 16, 32]

    def test_rook_always_one(self, rook):
        assert all(bounds.lcmd_closed_form_two_moves(rook, q) == 1
                   for q in range(1, 8))

    def test_rejects_other_sizes(self, queen):
        with pytest.raises(MoveSetError):
            bounds.lcmd_closed_form_two_moves(queen, 3)

    def test_matches_direct_enumeration_for_bishop(self, bishop):
        for q in (2, 3):
            direct = bounds.lcmd_direct(bounds.attack_rows(bishop, q))
            assert bounds.lcmd_closed_form_two_moves(bishop, q) == direct == 2 ** (q - 1)


@pytest.mark.skipif("RIDERPOLY_STRETCH" not in __import__("os").environ,
                    reason="~3 minute stretch job; set RIDERPOLY_STRETCH=1")
def test_stretch_nightrider_q4_lcmd(nightrider):
    value = bounds.lcmd_direct(bounds.attack_rows(nightrider, 4),
                               budget=11_000_000)
    assert value == 14290972303608000


class TestDivisibilityChain:
    @pytest.mark.parametrize("name,q,n_max,degree", [
        ("bishop", 3, 16, 6), ("queen", 3, 20, 6), ("nightrider", 2, 20, 4)])
    def test_period_divides_denominator_divides_lcmd(self, name, q, n_max,
                                                     degree, square):
        from riderpoly.counting import count_series
        from riderpoly.quasipoly import detect_period

        ms = piece_from_text(name)
        denom = bounds.denominator(ms, square, q)
        lcmd_val = bounds.lcmd_direct(bounds.attack_rows(ms, q))
        table = count_series(ms, square, q, 1, n_max)
        period = detect_period(table, degree, denom, denominator_bound=denom)
        assert denom % period == 0
        assert lcmd_val % denom == 0

    def test_report_shape(self, bishop, square):
        report = bounds.bounds_report(bishop, square, 3)
        assert report["denominator"] == 2
        assert report["lcmd"] == 4
        assert report["lcmd_closed_form"] == 4
        assert report["exhaustive"] is True
