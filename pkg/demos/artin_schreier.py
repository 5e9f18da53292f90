"""Exponents accumulating at 1: sum of x^(1 - 1/p^i) over F_p.

The coefficients are all 1, so the field criterion is trivially finite; the
relation y^p - x^(p-1) y - x^(p-1) is recovered from the coefficients.
"""
from __future__ import annotations

from algseries import Const, PuiseuxSeries, TermCount, check_full, make_field, substitute_poly

for p in (2, 3, 5):
    F = make_field(p)
    s = PuiseuxSeries.template(F, ("one-minus-p-pow",), Const(1))
    v = check_full(s)
    residue = substitute_poly(v.annpoly, s, TermCount(60))
    print(f"p = {p}: {s.fmt(3)}")
    print(f"  {v.kind} via {v.diagnostics['method']}: {v.annpoly.fmt()}")
    print(f"  residue through 60 terms is zero: {residue.is_zero()}")
