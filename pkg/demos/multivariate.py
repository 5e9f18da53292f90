"""Several variables: fibers, slices and the combined check.

Substituting x -> x1 x2 into the inseparable family keeps it algebraic,
while a product of a transcendental series with x2 is caught on a fiber.
"""
from __future__ import annotations

from algseries import IndexedRoot, MultiSeries, PrimeRadical, PuiseuxSeries, check_multivar, make_field

k = make_field(5, families=["t"])
s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
v = check_multivar(MultiSeries.monomial_subst(s, (1, 1)))
print("x -> x1*x2:", v.kind, "r =", v.r, "degree =", v.degree)

Q = make_field(0)
rad = PuiseuxSeries.template(Q, ("affine", 0, 1), PrimeRadical())
m = MultiSeries.univariate(2, rad, 0) * MultiSeries.explicit(2, Q, {(0, 1): 1})
v = check_multivar(m, i_max=4)
print("radicals(x1) * x2:", v.kind, "-", v.justification)
