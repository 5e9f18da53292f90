"""Branches of plane curves through blowups.

The node y^2 = x^2 + x^3 has rational tangents; y^2 = 2x^2 + x^3 needs the
square root of 2, which the root oracle adjoins to the coefficient tower.
"""
from __future__ import annotations

from algseries import ExponentBound, expand_branch, make_field, substitute_poly
from algseries.fields.parse import parse_bivar
from algseries.series import BivarPolynomial

Q = make_field(0)

for text in ("y^2 - x^2 - x^3", "y^2 - 2*x^2 - x^3"):
    T, terms = parse_bivar(Q, text)
    g = BivarPolynomial.from_terms(T, terms)
    s, chain = expand_branch(g, budget=8)
    print(text)
    print("  branch:          ", s.fmt(5))
    print("  residue degrees: ", chain.residue_degrees())
    print("  g(x, s) = 0 below x^9:", substitute_poly(g, s, ExponentBound(9)).is_zero())
