"""Exact quasipolynomial interpolation, evaluation, and coefficients.

A quasipolynomial of period p is p polynomials, one per residue of n
mod p; fitting Lagrange-interpolates each residue class over the
rationals and then *validates* on held-out rows, so a successful fit is a
falsifiable statement about the table, never just a curve through points.
All arithmetic is exact; there is no floating point in this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    FitError,
    InsufficientDataError,
    PeriodNotFoundError,
    ValidationMismatchError,
)
from .linalg import divisors, lcm


def poly_eval(coeffs, x) -> Fraction:
    """Evaluate ascending-power coefficients at x (Horner)."""
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def poly_add(a, b):
    size = max(len(a), len(b))
    return tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(size))


def poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _lagrange(points):
    """Interpolating polynomial through (x, y) pairs, ascending coefficients."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = poly_mul(basis, (Fraction(-xj), Fraction(1)))
                denom *= xi - xj
        weight = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += weight * c
    return tuple(coeffs)


@dataclass(frozen=True)
class Quasipolynomial:
    """p constituent polynomials; f(n) = constituent[n mod p](n).

    Constituents are stored in residue order with ascending-power exact
    rational coefficients, all padded to the common degree.
    """

    degree: int
    period: int
    constituents: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.constituents) != self.period:
            raise ValueError("constituent count must equal the period")
        for c in self.constituents:
            if len(c) != self.degree + 1:
                raise ValueError("constituents must share the stated degree")

    def evaluate(self, n: int) -> Fraction:
        """f(n) for any integer n; n = -1 uses the last constituent."""
        return poly_eval(self.constituents[n % self.period], n)

    def constituent(self, k: int):
        return self.constituents[k % self.period]

    # -- exact algebra -------------------------------------------------

    def _aligned(self, other):
        p = lcm(self.period, other.period)
        mine = [self.constituents[k % self.period] for k in range(p)]
        theirs = [other.constituents[k % other.period] for k in range(p)]
        return p, mine, theirs

    def __add__(self, other):
        other = _coerce(other)
        p, mine, theirs = self._aligned(other)
        parts = [poly_add(a, b) for a, b in zip(mine, theirs)]
        return _build(p, parts)

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce(other)
        p, mine, theirs = self._aligned(other)
        parts = [poly_mul(a, b) for a, b in zip(mine, theirs)]
        return _build(p, parts)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = constant(1)
        for _ in range(k):
            result = result * self
        return result

    def reduced(self) -> "Quasipolynomial":
        """Smallest period dividing the stored one with identical behavior."""
        for p in divisors(self.period):
            if all(self.constituents[k] == self.constituents[k % p]
                   for k in range(self.period)):
                return _build(p, [self.constituents[k] for k in range(p)])
        return self

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "period": self.period,
            "constituents": [[_frac_str(c) for c in cons]
                             for cons in self.constituents],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def from_json_dict(data: dict) -> Quasipolynomial:
    cons = tuple(tuple(Fraction(c) for c in row) for row in data["constituents"])
    return Quasipolynomial(degree=data["degree"], period=data["period"],
                           constituents=cons)


def _coerce(value) -> Quasipolynomial:
    if isinstance(value, Quasipolynomial):
        return value
    return constant(value)


def _build(period: int, parts) -> Quasipolynomial:
    degree = 0
    for part in parts:
        nonzero = [i for i, c in enumerate(part) if c != 0]
        degree = max(degree, nonzero[-1] if nonzero else 0)
    padded = tuple(
        tuple(Fraction(part[i]) if i < len(part) else Fraction(0)
              for i in range(degree + 1))
        for part in parts)
    return Quasipolynomial(degree=degree, period=period, constituents=padded)


def constant(c) -> Quasipolynomial:
    return Quasipolynomial(0, 1, ((Fraction(c),),))


def from_polynomial(coeffs) -> Quasipolynomial:
    return _build(1, [tuple(Fraction(c) for c in coeffs)])


def fit_values(values, period: int, degree: int) -> Quasipolynomial:
    """Interpolate each residue class exactly and validate on held-out rows.

    ``values`` maps n to an exact value.  Each residue class mod ``period``
    must supply at least degree + 2 rows: degree + 1 interpolation nodes
    plus at least one validation row.  Any validation mismatch raises,
    with the residuals attached.
    """
    constituents = []
    for k in range(period):
        ns = sorted(n for n in values if n % period == k)
        if len(ns) < degree + 2:
            raise InsufficientDataError(
                f"residue {k} mod {period}: need {degree + 2} rows "
                f"({degree + 1} nodes + validation), have {len(ns)}")
        nodes = ns[:degree + 1]
        coeffs = _lagrange([(n, values[n]) for n in nodes])
        residuals = {}
        for n in ns[degree + 1:]:
            predicted = poly_eval(coeffs, n)
            if predicted != values[n]:
                residuals[n] = (values[n], predicted)
        if residuals:
            raise ValidationMismatchError(
                f"period {period} rejected: {len(residuals)} held-out "
                f"mismatches in residue {k}", residuals=residuals)
        constituents.append(coeffs)
    padded = tuple(
        tuple(c[i] if i < len(c) else Fraction(0) for i in range(degree + 1))
        for c in constituents)
    return Quasipolynomial(degree=degree, period=period, constituents=padded)


def fit(table, period: int, degree: int,
        column: str = "unlabelled") -> Quasipolynomial:
    """Fit a count table, then check the Ehrhart leading coefficient.

    For unlabelled counts every constituent must lead with
    (vol B)^q / q!; labelled counts drop the q!.
    """
    qp = fit_values(table.column(column), period, degree)
    lead = Fraction(table.board.area) ** table.q
    if column == "unlabelled":
        lead /= factorial(table.q)
    for k, cons in enumerate(qp.constituents):
        if cons[degree] != lead:
            raise FitError(
                f"constituent {k} leads with {cons[degree]}, expected {lead}; "
                "wrong degree or corrupted counts")
    return qp


def detect_period(table, degree: int, p_max: int,
                  denominator_bound: int | None = None,
                  column: str = "unlabelled") -> int:
    """Smallest period <= p_max whose fit validates.

    When a denominator bound is supplied the search is restricted to its
    divisors (the quasipolynomial period divides the inside-out
    denominator).
    """
    if denominator_bound is not None:
        candidates = [p for p in divisors(denominator_bound) if p <= p_max]
    else:
        candidates = list(range(1, p_max + 1))
    failures = []
    values = table.column(column)
    for p in candidates:
        try:
            fit_values(values, p, degree)
            return p
        except ValidationMismatchError as exc:
            failures.append(f"p={p}: {exc}")
        except InsufficientDataError as exc:
            failures.append(f"p={p}: {exc}")
    raise PeriodNotFoundError(
        "no candidate period fits the table: " + "; ".join(failures))


def coefficient(qp: Quasipolynomial, i: int) -> list[Fraction]:
    """Coefficient of n^(degree - i) in each constituent, residue order."""
    if not 0 <= i <= qp.degree:
        raise IndexError(f"coefficient index {i} out of range 0..{qp.degree}")
    return [cons[qp.degree - i] for cons in qp.constituents]


def types_count(qp: Quasipolynomial, labelled: bool = False) -> int:
    """Number of combinatorial configuration types: the value at n = -1.

    Uses the last constituent.  A non-integer result means the fit is
    inconsistent and is reported as such.
    """
    value = qp.evaluate(-1)
    if value.denominator != 1:
        raise FitError(f"type count evaluated to non-integer {value}; "
                       "fit inconsistency")
    return int(value)


def pretty(qp: Quasipolynomial, var: str = "n") -> str:
    """Human-readable form; period 2 renders as {average} + (-1)^n (half-difference)."""
    if qp.period == 1:
        return _poly_str(qp.constituents[0], var)
    if qp.period == 2:
        even, odd = qp.constituents
        avg = tuple((a + b) / 2 for a, b in zip(even, odd))
        alt = tuple((a - b) / 2 for a, b in zip(even, odd))
        out = "{" + _poly_str(avg, var) + "}"
        if any(alt):
            out += f" + (-1)^{var} [" + _poly_str(alt, var) + "]"
        return out
    lines = [f"period {qp.period}:"]
    for k, cons in enumerate(qp.constituents):
        lines.append(f"  {var} = {k} mod {qp.period}:  {_poly_str(cons, var)}")
    return "\n".join(lines)


def _poly_str(coeffs, var: str) -> str:
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if power == 0:
            body = _frac_str(c)
        else:
            v = var if power == 1 else f"{var}^{power}"
            if c == 1:
                body = v
            elif c.denominator == 1:
                body = f"{c.numerator}{v}"
            elif c.numerator == 1:
                body = f"{v}/{c.denominator}"
            else:
                body = f"{c.numerator}{v}/{c.denominator}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
