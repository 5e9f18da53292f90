from __future__ import annotations

from fractions import Fraction

import pytest

from algseries import (
    BivarPolynomial,
    Const,
    ExponentBound,
    IndexedRoot,
    PuiseuxSeries,
    TermCount,
    hensel_unit_root,
    make_field,
    substitute_poly,
)
from algseries.errors import InfiniteTruncation, RamifiedRoot
from algseries.series import coefficient_prefix_tower, fmt_exponent

Q = make_field(0)
F3 = make_field(3)


def accumulating(F):
    return PuiseuxSeries.template(F, ("one-minus-p-pow",), Const(1))


def test_accumulating_exponents():
    s = accumulating(F3)
    assert s.truncate(TermCount(3)).exponents() == [Fraction(2, 3), Fraction(8, 9), Fraction(26, 27)]
    assert s.truncate(ExponentBound(Fraction(9, 10))).exponents() == [Fraction(2, 3), Fraction(8, 9)]
    assert s.coefficient(Fraction(8, 9)) == F3.one()
    assert not s.coefficient(Fraction(1, 2))


def test_truncation_past_accumulation_point_is_refused():
    with pytest.raises(InfiniteTruncation):
        accumulating(F3).truncate(ExponentBound(2))


def test_geometric_inverse():
    one_minus_x = PuiseuxSeries.finite(Q, [(0, 1), (1, -1)])
    g = PuiseuxSeries.geometric(Q)
    assert (one_minus_x * g).truncate(ExponentBound(20)).terms == [(Fraction(0), Q.one())]
    assert one_minus_x.inverse().truncate(ExponentBound(10)) == g.truncate(ExponentBound(10))


def test_fractional_square():
    r = PuiseuxSeries.finite(Q, [(Fraction(1, 2), 1)])
    assert (r * r).truncate(TermCount(5)).terms == [(Fraction(1), Q.one())]


def test_frobenius_matches_pth_power():
    s = PuiseuxSeries.geometric(F3, step=Fraction(1, 2), start=1) + accumulating(F3)
    bound = ExponentBound(Fraction(5, 2))
    assert s.frobenius().truncate(bound) == (s**3).truncate(bound)
    below = ExponentBound(Fraction(19, 20))  # under the accumulation point 1
    assert s.frobenius().frobenius_root().truncate(below) == s.truncate(below)


def test_frobenius_of_inseparable_coefficients():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    f = s.frobenius().truncate(TermCount(3))
    assert f.exponents() == [5, 10, 15]
    assert [c.fmt() for c in f.coefficients()] == ["t1", "t2", "t3"]


def test_formatting():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    assert s.fmt(2) == "t1^(1/5)*x + t2^(1/5)*x^2 + ..."
    assert fmt_exponent(Fraction(-1, 3)) == "x^(-1/3)"


def _binomial_half(n):
    out, c = [], Fraction(1)
    for k in range(n):
        out.append(c)
        c = c * (Fraction(1, 2) - k) / (k + 1)
    return out


def test_hensel_square_root():
    z = hensel_unit_root(PuiseuxSeries.finite(Q, [(0, 1), (1, 1)]), 2)
    got = z.truncate(ExponentBound(12)).terms
    assert got == [(Fraction(k), Q.const(c)) for k, c in enumerate(_binomial_half(12))]


def test_hensel_refuses_ramified_and_nonunit():
    with pytest.raises(RamifiedRoot):
        hensel_unit_root(PuiseuxSeries.finite(F3, [(0, 1), (1, 1)]), 3)
    with pytest.raises(ValueError):
        hensel_unit_root(PuiseuxSeries.finite(Q, [(0, 2), (1, 1)]), 2)


def test_substitute_poly_budgets():
    g = BivarPolynomial.from_terms(Q, {(0, 1): 1, (1, 1): -1, (1, 0): -1})  # (1 - x) y - x
    s = PuiseuxSeries.geometric(Q, start=1)
    assert substitute_poly(g, s, TermCount(30)).is_zero()
    assert substitute_poly(g, s, ExponentBound(30)).is_zero()
    off = s + PuiseuxSeries.finite(Q, [(4, 1)])
    assert substitute_poly(g, off, ExponentBound(10)).terms[0] == (Fraction(4), Q.one())


def test_prefix_tower_degrees():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    assert [coefficient_prefix_tower(s, i).degree for i in (1, 2, 3)] == [5, 25, 125]


def test_shift_and_power_substitution():
    g = PuiseuxSeries.geometric(Q)
    assert g.shift(2).truncate(TermCount(3)).exponents() == [2, 3, 4]
    assert g.substitute_power(Fraction(1, 2)).truncate(TermCount(3)).exponents() == [0, Fraction(1, 2), 1]
    assert g.order() == 0 and PuiseuxSeries.zero(Q).truncate(TermCount(5)).is_zero()
