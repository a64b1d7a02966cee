import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from riderpoly import quasipoly as qp
from riderpoly.counting import count_series
from riderpoly.errors import (
    FitError,
    InsufficientDataError,
    PeriodNotFoundError,
    ValidationMismatchError,
)


@pytest.fixture(scope="module")
def two_queens(queen, square):
    return count_series(queen, square, 2, 1, 12)


@pytest.fixture(scope="module")
def two_nightriders(nightrider, square):
    return count_series(nightrider, square, 2, 1, 20)


class TestFit:
    def test_two_queens_coefficients(self, two_queens):
        fitted = qp.fit(two_queens, 1, 4)
        assert fitted.constituents[0] == (F(0), F(-1, 3), F(3, 2), F(-5, 3), F(1, 2))

    def test_two_nightriders_constituents(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        even = (F(0), F(-11, 12) + F(1, 4), F(3, 2), F(-5, 6), F(1, 2))
        odd = (F(0), F(-11, 12) - F(1, 4), F(3, 2), F(-5, 6), F(1, 2))
        assert fitted.constituents == (even, odd)

    def test_q1_square_is_n_squared(self, rook, square):
        table = count_series(rook, square, 1, 1, 6)
        fitted = qp.fit(table, 1, 2)
        assert fitted.constituents[0] == (F(0), F(0), F(1))

    def test_round_trip_reproduces_every_row(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        for n in two_nightriders.ns():
            assert fitted.evaluate(n) == two_nightriders.unlabelled(n)

    def test_wrong_period_raises_validation(self, two_nightriders):
        with pytest.raises(ValidationMismatchError) as exc:
            qp.fit_values(two_nightriders.column("unlabelled"), 1, 4)
        assert exc.value.residuals

    def test_insufficient_data(self, two_queens):
        with pytest.raises(InsufficientDataError):
            qp.fit_values(two_queens.column("unlabelled"), 4, 4)

    def test_labelled_column_leading_coefficient(self, two_queens):
        fitted = qp.fit(two_queens, 1, 4, column="labelled")
        assert fitted.constituents[0][4] == 1

    def test_wrong_degree_fails_leading_check(self, two_queens):
        with pytest.raises(FitError):
            qp.fit(two_queens, 1, 5)


class TestDetectPeriod:
    def test_queen_is_one(self, two_queens):
        assert qp.detect_period(two_queens, 4, 4) == 1

    def test_nightrider_is_two(self, two_nightriders):
        assert qp.detect_period(two_nightriders, 4, 4) == 2

    def test_divisor_restriction(self, two_nightriders):
        assert qp.detect_period(two_nightriders, 4, 6, denominator_bound=2) == 2

    def test_not_found_reports_residuals(self, two_nightriders):
        with pytest.raises(PeriodNotFoundError):
            qp.detect_period(two_nightriders, 4, 1)


class TestEvaluate:
    def test_named_values(self, two_queens):
        fitted = qp.fit(two_queens, 1, 4)
        assert fitted.evaluate(5) == 140
        assert fitted.evaluate(-1) == 4

    def test_negative_uses_last_constituent(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        assert fitted.evaluate(-1) == qp.poly_eval(fitted.constituents[1], -1) == 4

    def test_types_count(self, two_queens, two_nightriders):
        assert qp.types_count(qp.fit(two_queens, 1, 4)) == 4
        assert qp.types_count(qp.fit(two_nightriders, 2, 4)) == 4

    def test_types_count_rejects_non_integer(self):
        bad = qp.from_polynomial([F(1, 2), F(1)])
        with pytest.raises(FitError):
            qp.types_count(bad)

    def test_labelled_and_unlabelled_type_counts_agree(self, two_nightriders):
        unlab = qp.types_count(qp.fit(two_nightriders, 2, 4))
        lab = qp.types_count(qp.fit(two_nightriders, 2, 4, column="labelled"),
                             labelled=True)
        assert lab == 2 * unlab == 8


class TestCoefficient:
    def test_two_queens_gamma0(self, two_queens):
        fitted = qp.fit(two_queens, 1, 4)
        assert qp.coefficient(fitted, 0) == [F(1, 2)]

    def test_two_nightriders_gammas(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        assert qp.coefficient(fitted, 1) == [F(-5, 6), F(-5, 6)]
        assert qp.coefficient(fitted, 3) == [F(-11, 12) + F(1, 4),
                                             F(-11, 12) - F(1, 4)]

    def test_out_of_range(self, two_queens):
        fitted = qp.fit(two_queens, 1, 4)
        with pytest.raises(IndexError):
            qp.coefficient(fitted, 5)


class TestSerialization:
    def test_schema_fields(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        data = json.loads(fitted.to_json())
        assert data["degree"] == 4 and data["period"] == 2
        assert data["constituents"][0][4] == "1/2"
        assert qp.from_json_dict(data) == fitted

    def test_pretty_period_two(self, two_nightriders):
        fitted = qp.fit(two_nightriders, 2, 4)
        text = qp.pretty(fitted)
        assert text == "{n^4/2 - 5n^3/6 + 3n^2/2 - 11n/12} + (-1)^n [n/4]"

    def test_pretty_period_one(self, two_queens):
        assert qp.pretty(qp.fit(two_queens, 1, 4)) == \
            "n^4/2 - 5n^3/3 + 3n^2/2 - n/3"


class TestAlgebra:
    coeff = st.integers(-4, 4)
    polys = st.lists(coeff, min_size=1, max_size=4)

    @given(polys, polys, st.integers(-6, 6))
    def test_sum_and_product_evaluate_pointwise(self, a, b, n):
        qa, qb = qp.from_polynomial(a), qp.from_polynomial(b)
        assert (qa + qb).evaluate(n) == qa.evaluate(n) + qb.evaluate(n)
        assert (qa * qb).evaluate(n) == qa.evaluate(n) * qb.evaluate(n)

    def test_mixed_period_alignment(self):
        alt = qp.Quasipolynomial(0, 2, ((F(1),), (F(-1),)))
        lin = qp.from_polynomial([0, 1])
        prod = alt * lin
        for n in range(-4, 5):
            assert prod.evaluate(n) == (1 if n % 2 == 0 else -1) * n

    def test_power(self):
        lin = qp.from_polynomial([1, 1])
        cube = lin ** 3
        for n in range(-3, 4):
            assert cube.evaluate(n) == (n + 1) ** 3

    def test_reduced_collapses_fake_period(self):
        fake = qp.Quasipolynomial(1, 2, ((F(0), F(1)), (F(0), F(1))))
        assert fake.reduced().period == 1
