from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import pytest

from riderpoly.arrangement import (
    alpha,
    build_move_arrangement,
    decompose,
    hyperplane_row,
    intersection_semilattice,
    iso_classes,
    mobius,
    reconstruct_count,
    semilattice_report,
    w_equal_flat,
    w_slope_flat,
)
from riderpoly.counting import count_nonattacking
from riderpoly.geometry import interior_lattice_points, piece_from_text
from riderpoly.linalg import canonical_int_rows


@pytest.fixture(scope="module")
def queen_sl2(queen):
    return intersection_semilattice(queen, 2)


@pytest.fixture(scope="module")
def queen_sl3(queen):
    return intersection_semilattice(queen, 3)


@pytest.fixture(scope="module")
def bishop_sl4(bishop):
    return intersection_semilattice(bishop, 4)


class TestArrangement:
    def test_hyperplane_counts(self, queen, bishop):
        assert len(build_move_arrangement(queen, 2)) == 4
        assert len(build_move_arrangement(queen, 3)) == 12
        assert len(build_move_arrangement(bishop, 4)) == 12

    def test_hyperplane_count_formula(self, nightrider):
        for q in (2, 3, 4):
            assert (len(build_move_arrangement(nightrider, q))
                    == comb(q, 2) * len(nightrider))

    def test_row_encodes_difference_normal(self, queen):
        hyp = build_move_arrangement(queen, 2)[1]  # move (1,1): perp (1,-1)
        assert hyperplane_row(hyp, queen, 2) == (-1, 1, 1, -1)


class TestSemilattice:
    def test_queen_q2_structure(self, queen_sl2):
        assert len(queen_sl2.flats) == 6
        mus = sorted(f.mobius for f in queen_sl2.flats)
        assert mus == [-1, -1, -1, -1, 1, 3]

    def test_rook_q2_mobius(self, rook):
        sl = intersection_semilattice(rook, 2)
        assert sorted(f.mobius for f in sl.flats) == [-1, -1, 1, 1]

    def test_closure_under_intersection(self, queen_sl3):
        flats = queen_sl3.flats
        for a in flats:
            for b in flats:
                key = canonical_int_rows(list(a.rows) + list(b.rows))
                assert key in queen_sl3._by_key

    def test_mobius_recursion(self, queen_sl3):
        # over every interval [bottom, U]: the Mobius values sum to zero
        for u in queen_sl3.flats:
            if u.codim == 0:
                continue
            total = sum(v.mobius for v in queen_sl3.flats
                        if v.mask & u.mask == v.mask)
            assert total == 0, u

    def test_mobius_accessor(self, queen_sl2):
        assert mobius(queen_sl2, 0) == 1
        with pytest.raises(KeyError):
            mobius(queen_sl2, 99)

    def test_flat_codim_bounds(self, queen_sl3, bishop_sl4):
        for sl in (queen_sl3, bishop_sl4):
            for f in sl.flats:
                if f.kappa >= 2:
                    assert -(-f.kappa // 2) <= f.codim <= 2 * f.kappa - 2

    def test_atoms_have_mobius_minus_one(self, queen_sl3):
        for f in queen_sl3.flats:
            if f.codim == 1:
                assert f.mobius == -1


class TestNamedFlats:
    @pytest.mark.parametrize("name,m", [("rook", 2), ("bishop", 2),
                                        ("semiqueen", 3), ("queen", 4),
                                        ("nightrider", 4)])
    def test_w_family_mobius(self, name, m):
        ms = piece_from_text(name)
        assert len(ms) == m
        sl = intersection_semilattice(ms, 3)
        assert w_slope_flat(sl, [0, 1], 0).mobius == -1
        assert w_slope_flat(sl, [0, 1, 2], 0).mobius == 2
        assert w_equal_flat(sl, [0, 1]).mobius == m - 1
        mixed = sl.flat_of_hyperplanes(
            [sl.hyperplane_index(0, 1, r) for r in range(m)]
            + [sl.hyperplane_index(0, 2, 0), sl.hyperplane_index(1, 2, 0)])
        assert mixed.mobius == -2 * (m - 1)
        # corrected closed form for the full coincidence flat; the printed
        # (|M|-1)^2(|M|-3) contradicts the region counts (see ledger/README)
        assert w_equal_flat(sl, [0, 1, 2]).mobius == (m - 1) ** 2 * (m + 2)

    def test_w_equal_is_all_slopes_intersection(self, queen_sl2):
        weq = w_equal_flat(queen_sl2, [0, 1])
        assert weq.codim == 2
        assert len(weq.hyperplanes) == 4
        assert weq.mobius == 3

    def test_unknown_flat_rejected(self, queen_sl2):
        with pytest.raises(KeyError):
            queen_sl2.flat_by_rows([(1, 0, 0, 0)])


class TestDecompose:
    def test_disjoint_pairs_split(self, bishop_sl4):
        sl = bishop_sl4
        flat = sl.flat_of_hyperplanes([sl.hyperplane_index(0, 1, 0),
                                       sl.hyperplane_index(2, 3, 0)])
        parts = decompose(sl, flat)
        assert len(parts) == 2
        assert all(p.codim == 1 for p in parts)
        assert flat.mobius == parts[0].mobius * parts[1].mobius == 1

    def test_connected_flat_is_one_component(self, queen_sl3):
        weq = w_equal_flat(queen_sl3, [0, 1, 2])
        assert len(decompose(queen_sl3, weq)) == 1

    def test_mobius_and_alpha_multiplicativity(self, bishop_sl4, square):
        sl = bishop_sl4
        for flat in sl.flats:
            parts = decompose(sl, flat)
            if len(parts) < 2:
                continue
            assert flat.mobius == (
                parts[0].mobius * parts[1].mobius if len(parts) == 2
                else parts[0].mobius * parts[1].mobius * parts[2].mobius)
            for n in range(0, 7):
                direct = alpha(sl, flat, square, n)
                product = 1
                for part in parts:
                    product *= alpha(sl, part, square, n)
                assert direct == product, (flat, n)


class TestIsoClasses:
    def test_queen_q2_classes(self, queen_sl2):
        classes = iso_classes(queen_sl2)
        # bottom, one class per slope, and the coincidence flat
        assert len(classes) == 6
        weq_class = [c for c in classes if c.codim == 2]
        assert len(weq_class) == 1 and weq_class[0].aut_order == 2

    def test_queen_q3_equal_pair_class(self, queen_sl3):
        weq = w_equal_flat(queen_sl3, [0, 1])
        cls = iso_classes(queen_sl3)[weq.iso_class]
        assert cls.size == 3 == comb(3, 2) * factorial(2) // 2

    def test_class_size_identity(self, queen_sl3, bishop_sl4):
        for sl in (queen_sl3, bishop_sl4):
            for cls in iso_classes(sl):
                expected = (comb(sl.q, cls.kappa) * factorial(cls.kappa)
                            // cls.aut_order)
                assert cls.size == expected, cls

    def test_similar_and_dissimilar_subspaces(self, queen_sl3):
        sl = queen_sl3
        move = {m.slope_label: r for r, m in enumerate(sl.ms)}
        # X: pieces 0,1 coincide and piece 2 sits on the slope-1 line through them
        x = sl.flat_of_hyperplanes(
            [sl.hyperplane_index(0, 1, r) for r in range(4)]
            + [sl.hyperplane_index(0, 2, move["1/1"])])
        # Y: same shape with pieces 1 and 2 exchanged
        y = sl.flat_of_hyperplanes(
            [sl.hyperplane_index(0, 2, r) for r in range(4)]
            + [sl.hyperplane_index(0, 1, move["1/1"])])
        # Z: all three on one slope -1 line, two also on a slope-1 line
        z = sl.flat_of_hyperplanes(
            [sl.hyperplane_index(a, b, move["-1/1"])
             for a, b in ((0, 1), (0, 2), (1, 2))]
            + [sl.hyperplane_index(0, 2, move["1/1"])])
        assert x.kappa == y.kappa == z.kappa == 3
        assert x.codim == y.codim == z.codim == 3
        assert x.iso_key == y.iso_key
        assert z.iso_key != x.iso_key

    def test_report_shape(self, queen_sl2):
        report = semilattice_report(queen_sl2)
        assert report["flat_count"] == 6
        assert report["hyperplane_count"] == 4
        assert len(report["flats"]) == 6


class TestAlpha:
    def test_same_row_cubic(self, queen, queen_sl2, square):
        same_row = queen_sl2.flat_of_hyperplanes(
            [queen_sl2.hyperplane_index(0, 1, 0)])  # move (1,0)
        for n in range(0, 7):
            assert alpha(queen_sl2, same_row, square, n) == n**3

    def test_diagonal_cubic(self, queen, queen_sl2, square):
        move = {m.slope_label: r for r, m in enumerate(queen)}
        diag = queen_sl2.flat_of_hyperplanes(
            [queen_sl2.hyperplane_index(0, 1, move["1/1"])])
        for n in range(0, 7):
            assert alpha(queen_sl2, diag, square, n) == n * (2 * n**2 + 1) // 3
        assert alpha(queen_sl2, diag, square, 2) == 6

    def test_coincidence_flat_counts_cells(self, queen_sl2, square):
        weq = w_equal_flat(queen_sl2, [0, 1])
        for n in range(0, 7):
            assert (alpha(queen_sl2, weq, square, n)
                    == len(interior_lattice_points(square, n + 1)))

    def test_alpha_by_unpruned_enumeration(self, queen_sl3, square):
        # oracle: count triples satisfying the flat equations directly
        sl = queen_sl3
        for flat in sl.flats:
            if flat.kappa != 3 or flat.codim > 3:
                continue
            for n in (2, 3, 4):
                points = interior_lattice_points(square, n + 1)
                perp = [m.perp for m in sl.ms]
                count = 0
                for za in points:
                    for zb in points:
                        for zc in points:
                            z = (za, zb, zc)
                            ok = True
                            for i, j, r in flat.edges:
                                dx = z[j][0] - z[i][0]
                                dy = z[j][1] - z[i][1]
                                if perp[r][0] * dx + perp[r][1] * dy != 0:
                                    ok = False
                                    break
                            if ok:
                                count += 1
                assert alpha(sl, flat, square, n) == count, (flat, n)


class TestReconstruction:
    def test_queen_q2_n3(self, queen_sl2, square):
        assert reconstruct_count(queen_sl2, square, 3) == 16

    def test_rook_q2_n2(self, rook, square):
        sl = intersection_semilattice(rook, 2)
        assert reconstruct_count(sl, square, 2) == 4

    def test_empty_board(self, queen_sl2, square):
        assert reconstruct_count(queen_sl2, square, 0) == 0

    @pytest.mark.parametrize("name", ["queen", "rook", "bishop", "nightrider"])
    @pytest.mark.parametrize("q", [2, 3])
    def test_oracle_equivalence(self, name, q, square):
        ms = piece_from_text(name)
        sl = intersection_semilattice(ms, q)
        for n in range(1, 9):
            lab, _ = count_nonattacking(ms, square, q, n)
            assert reconstruct_count(sl, square, n) == lab
