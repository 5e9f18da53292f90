"""Series with p-th root coefficients over F_5(t1, t2, ...).

The coefficient field is infinite over k, yet one Frobenius twist pulls it
back into k, and y^5 minus the twisted series annihilates the series.
"""
from __future__ import annotations

from algseries import IndexedRoot, PuiseuxSeries, check_full, inseparable_descent, make_field
from algseries.algebraicity import twist_degrees

k = make_field(5, families=["t"])
s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
print("series:           ", s.fmt(4))
print("prefix degrees r=0:", twist_degrees(s, 4, 0))
print("prefix degrees r=1:", twist_degrees(s, 4, 1))
d = inseparable_descent(s, 4)
print("descent lambdas:  ", d.lambdas, "n =", d.n)
v = check_full(s)
print("verdict:          ", v.kind, "r =", v.r, "degree =", v.degree)
print("annihilator:      ", v.annpoly.fmt(4))
