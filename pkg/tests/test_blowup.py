from __future__ import annotations

from fractions import Fraction

import pytest

from algseries import BivarPolynomial, BivarTrunc, ExponentBound, PuiseuxSeries, expand_branch, make_field, substitute_poly
from algseries.blowup import RootOracle, detect_snc, initial_frame, transform_step
from algseries.errors import NoPowerSeriesBranch
from algseries.fields.parse import parse_bivar

Q = make_field(0)
F3 = make_field(3)


def bt(T, text):
    T, d = parse_bivar(T, text)
    return BivarTrunc(T, d)


def poly(T, text):
    return bt(T, text).to_poly()


def test_blowup_of_the_node():
    fr0 = initial_frame(poly(Q, "y^2 - x^2 - x^3"))
    assert not detect_snc(fr0)
    fr1 = transform_step(fr0, Q.one())
    # g(x, x(y1 + 1)) = x^2 (y1^2 + 2 y1 - x)
    assert fr1.b == 2 and fr1.g == bt(Q, "y^2 + 2*y - x")
    assert detect_snc(fr1)


def test_snc_detection():
    assert not detect_snc(initial_frame(poly(Q, "y^2 - x")))
    assert detect_snc(initial_frame(poly(Q, "y - x^2")))


def test_tangent_cone_chart():
    b, g1 = bt(Q, "y^2 + 3*x*y + 2*x^2").chart()
    assert b == 2 and g1 == bt(Q, "y^2 + 3*y + 2")


def test_chart_in_the_other_direction():
    b, g1 = bt(F3, "y^3 - x^2*y - x^2").chart_y()
    # g(xy, y) = y^2 (y - x^2 y - x^2)
    assert b == 2 and g1 == bt(F3, "y - x^2*y - x^2")


def test_irrational_tangent_adjoins_a_root():
    s, chain = expand_branch(poly(Q, "y^2 - 2*x^2 - x^3"), budget=6)
    assert s.tower.degree == 2 and chain.residue_degrees()[0] == 2
    assert substitute_poly(poly(Q, "y^2 - 2*x^2 - x^3"), s, ExponentBound(7)).is_zero()


def test_seeded_oracle_root_is_used():
    T, r = Q.radical(Q.const(2), 2)
    s, _ = expand_branch(poly(Q, "y^2 - 2*x^2 - x^3"), RootOracle(seeds=[-r]), budget=4)
    assert s.truncate(ExponentBound(2)).terms == [(Fraction(1), -s.tower.coerce(r))]


def test_inseparable_expansion():
    k = make_field(5, families=["t"])
    g = BivarPolynomial.from_terms(k, {(0, 5): 1, **{(5 * i, 0): -k.gen(f"t{i}") for i in range(1, 5)}})
    s, chain = expand_branch(g, mode="inseparable", budget=6)
    assert s.fmt(8) == "t1^(1/5)*x + t2^(1/5)*x^2 + t3^(1/5)*x^3 + t4^(1/5)*x^4"
    assert chain.i0() == 1
    assert chain.residue_degrees()[0] == 5


def test_no_power_series_branch():
    with pytest.raises(NoPowerSeriesBranch):
        expand_branch(poly(F3, "y^3 - x^2*y - x^2"))


def test_branch_agrees_with_closed_form():
    # (1 - x) y - x has the branch x/(1 - x)
    s, _ = expand_branch(poly(Q, "y - x*y - x"), budget=10)
    assert s.truncate(ExponentBound(10)) == PuiseuxSeries.geometric(Q, start=1).truncate(ExponentBound(10))


def test_nonintegral_exponents_rejected():
    with pytest.raises(ValueError):
        BivarTrunc(Q, {(Fraction(1, 2), 1): Q.one()})
