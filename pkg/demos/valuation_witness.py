"""The valuation of an arc and the Cauchy witness for a rank increase.

For the arc v = sum t_n^(1/5) u^n over F_5(t1, t2, ...) the residue fields
stabilize at degree 5; the witness polynomials climb in value forever.
"""
from __future__ import annotations

from algseries import (
    IndexedRoot,
    PuiseuxSeries,
    build_chain_from_series,
    classify_rank_increase,
    completion_witness,
    make_field,
    value_of,
)

k = make_field(5, families=["t"])
s = PuiseuxSeries.template(k, ("affine", 0, 1), IndexedRoot("t", 1))
chain = build_chain_from_series(s, 6)
print("residue degrees:", chain.residue_degrees())
for expr in ("u", "v^5 - t1*u^5", "v^5 - t1*u^5 - t2*u^10"):
    print(f"value({expr}) =", value_of(chain, expr))
print("classification:", classify_rank_increase(chain).kind)
w = completion_witness(chain, 20)
print("witness steps:", ", ".join(f"{a.fmt()} x^{n}" for a, n in w.steps))
print("witness values:", ", ".join(map(str, w.values)), "then", w.final_value)
