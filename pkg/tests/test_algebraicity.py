from __future__ import annotations

from fractions import Fraction

import pytest

from algseries import (
    BivarPolynomial,
    Const,
    IndexedRoot,
    PrimeRadical,
    PuiseuxSeries,
    TermCount,
    ann_poly_reconstruct,
    check_full,
    galois_annihilator,
    hensel_unit_root,
    inseparable_descent,
    make_field,
    substitute_poly,
)
from algseries.algebraicity import twist_degrees
from algseries.errors import NotPurelyInseparable

Q = make_field(0)


def proportional(h, g) -> bool:
    h, g = h.terms(), g.terms()
    if set(h) != set(g):
        return False
    m = next(iter(g))
    return all(h[k] * g[m] == g[k] * h[m] for k in g)


def poly(T, terms):
    return BivarPolynomial.from_terms(T, terms)


def test_rational_series_is_algebraic():
    v = check_full(PuiseuxSeries.geometric(Q, start=1))
    assert (v.kind, v.r, v.degree) == ("algebraic", 0, 1)
    assert proportional(v.annpoly, poly(Q, {(0, 1): 1, (1, 1): -1, (1, 0): -1}))


def test_square_root_coefficient_uses_conjugates():
    T, r = Q.radical(Q.const(2), 2)
    s = PuiseuxSeries.finite(T, [(1, r)])
    v = check_full(s)
    assert (v.kind, v.degree) == ("algebraic", 2)
    assert proportional(v.annpoly, poly(Q, {(0, 2): 1, (2, 0): -2}))
    assert proportional(galois_annihilator(s), poly(Q, {(0, 2): 1, (2, 0): -2}))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_artin_schreier_relation_recovered(p):
    F = make_field(p)
    s = PuiseuxSeries.template(F, ("one-minus-p-pow",), Const(1))
    v = check_full(s)
    assert v.kind == "algebraic"
    assert proportional(v.annpoly, poly(F, {(0, p): 1, (p - 1, 1): -1, (p - 1, 0): -1}))


def test_independent_radicals_are_not_algebraic():
    s = PuiseuxSeries.template(Q, ("affine", 0, 1), PrimeRadical())
    v = check_full(s, i_max=4)
    assert v.kind == "not-algebraic"
    assert v.schedule[0] == [2, 4, 8, 16]
    assert check_full(s, i_max=1).kind == "inconclusive"


def test_single_inseparable_coefficient():
    k = make_field(5, families=["t"])
    T, z = k.radical(k.gen("t3"), 5)
    v = check_full(PuiseuxSeries.finite(T, [(3, z)]))
    assert (v.kind, v.r) == ("algebraic", 0)
    assert v.annpoly.fmt() == "y^5 + 4*t3*x^15"  # 4 = -1 in F_5


def test_twist_degrees_collapse_after_one_frobenius():
    k = make_field(5, families=["t"])
    s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
    assert twist_degrees(s, 3, 0) == [5, 25, 125]
    assert twist_degrees(s, 3, 1) == [1, 1, 1]


def test_descent_rejects_separable_coefficients():
    F = make_field(5, generators=["t"])
    T, r = F.radical(F.gen("t"), 2)
    with pytest.raises(NotPurelyInseparable):
        inseparable_descent(PuiseuxSeries.finite(T, [(1, r)]))


def test_reconstruction_bounds():
    z = PuiseuxSeries.monomial(Q, 1, 1) * hensel_unit_root(PuiseuxSeries.finite(Q, [(0, 1), (1, 1)]), 2)
    assert ann_poly_reconstruct(z, 1, 3, terms=20) is None
    h = ann_poly_reconstruct(z, 2, 3, terms=20)
    assert proportional(h, poly(Q, {(0, 2): 1, (2, 0): -1, (3, 0): -1}))
    assert substitute_poly(h, z, TermCount(40)).is_zero()


def test_verdict_json_shape():
    v = check_full(PuiseuxSeries.geometric(Q, start=1)).to_json()
    assert set(v) == {"verdict", "r", "degree", "annpoly", "diagnostics"}
    n = check_full(PuiseuxSeries.template(Q, ("affine", 0, 1), PrimeRadical()), i_max=4).to_json()
    assert n["degree"] == "infinite" and n["annpoly"] is None


def test_fractional_exponents_take_the_ramified_norm():
    T, r = Q.radical(Q.const(2), 2)
    s = PuiseuxSeries.finite(T, [(1, r), (Fraction(5, 2), Fraction(1, 3))])
    v = check_full(s)
    assert v.kind == "algebraic"
    # ((y^2 + x^5/9 - 2x^2)^2 - 4 x^5 y^2 / 9, expanded by hand
    expect = {(0, 4): 1, (2, 2): -4, (5, 2): Fraction(-2, 9), (4, 0): 4, (7, 0): Fraction(-4, 9), (10, 0): Fraction(1, 81)}
    assert proportional(v.annpoly, poly(Q, expect))
