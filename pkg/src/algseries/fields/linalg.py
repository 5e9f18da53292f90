"""Exact sparse linear algebra over any field whose elements support
``+ - * /`` and truthiness.

Vectors are dicts ``{coordinate: value}`` with zero entries omitted.
"""
from __future__ import annotations


def axpy(v: dict, c, w: dict) -> dict:
    """v - c*w, in a new dict."""
    out = dict(v)
    for k, x in w.items():
        y = out.get(k)
        r = -(c * x) if y is None else y - c * x
        if r:
            out[k] = r
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incremental echelon basis with provenance.

    Each inserted vector carries a label; ``reduce`` returns the residual
    together with coefficients ``combo`` such that
    ``v = residual + sum(combo[l] * vector(l))``.
    """

    def __init__(self, one, order=None):
        self.one = one
        self.rows = []  # (pivot, row with row[pivot] == 1, combo)
        self.pivots = {}
        self.labels = []
        self.order = order or (lambda k: k)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict):
        v = {k: x for k, x in v.items() if x}
        combo: dict = {}
        for pivot, row, rcombo in self.rows:
            c = v.get(pivot)
            if not c:
                continue
            v = axpy(v, c, row)
            for l, x in rcombo.items():
                y = combo.get(l)
                combo[l] = c * x if y is None else y + c * x
        return v, {l: x for l, x in combo.items() if x}

    def add(self, v: dict, label) -> tuple:
        """Insert v; returns (True, None) if independent, else (False, combo)."""
        residual, combo = self.reduce(v)
        if not residual:
            return False, combo
        pivot = max(residual, key=self.order)
        inv = self.one / residual[pivot]
        row = {k: x * inv for k, x in residual.items()}
        # residual = v - sum(combo * vec) so row = inv * (vec(label) - sum combo)
        rcombo = {l: -(x * inv) for l, x in combo.items()}
        rcombo[label] = inv
        self.rows.append((pivot, row, rcombo))
        self.pivots[pivot] = len(self.rows) - 1
        self.labels.append(label)
        return True, None

    def express(self, v: dict):
        """Coefficients writing v in the inserted vectors, or None."""
        residual, combo = self.reduce(v)
        return None if residual else combo


def solve(columns: dict, rhs: dict, one):
    """Find z with sum(z[l] * columns[l]) == rhs, or None.

    ``columns`` maps unknown labels to sparse column vectors.
    """
    ech = Echelon(one)
    for label, col in columns.items():
        ech.add(col, label)
    return ech.express(rhs)


def first_relation(vectors: list, one):
    """Index j and coefficients c with vectors[j] = sum(c[i] vectors[i]), i < j.

    Returns None when the vectors are independent.
    """
    ech = Echelon(one)
    for j, v in enumerate(vectors):
        ok, combo = ech.add(v, j)
        if not ok:
            return j, combo
    return None
