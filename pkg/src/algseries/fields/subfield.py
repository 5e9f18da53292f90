"""Subfields generated by finitely many tower elements.

A :class:`GeneratedField` is ``K(g_1, ..., g_m)`` inside a tower ``L``,
where ``K`` is a prefix of ``L``.  It is computed one generator at a time:
the minimal polynomial of ``g_j`` over ``K(g_1..g_{j-1})`` is the first
linear dependency among ``b * g_j^i``, with ``b`` running over a basis of
the previous field.  The resulting relations are exactly the data needed to
rebuild the subfield as a tower of its own.
"""
from __future__ import annotations

from ..errors import RebasingFailed
from . import linalg
from . import upoly
from .tower import INSEPARABLE, SEPARABLE, Tower


class GeneratedField:
    def __init__(self, L: Tower, depth: int, generators, names=None):
        self.L = L
        self.depth = depth
        self.K = L.prefix(depth)
        self.generators = [L.coerce(g) for g in generators]
        self.names = list(names) if names is not None else [None] * len(self.generators)
        self._build()

    def _vec(self, e):
        return self.L.coords(e, self.depth)

    def _build(self):
        K = self.K
        one = K.one()
        # basis entries: (label, element); labels index the rebuilt tower monomials
        basis = [((), self.L.one())]
        self.relations = []  # per kept generator: (index, degree, {(label, i): coeff})
        self.step_degrees = []
        for j, g in enumerate(self.generators):
            ech = linalg.Echelon(one)
            power = self.L.one()
            m = 0
            rel = None
            while True:
                found = None
                for label, b in basis:
                    ok, combo = ech.add(self._vec(b * power), (label, m))
                    if not ok:
                        found = combo
                        break
                if found is not None:
                    if m == 0:
                        raise AssertionError("basis collapsed")
                    rel = found
                    break
                m += 1
                power = power * g
                if m > self.L.degree_over(self.depth):
                    raise AssertionError("degree exceeded the ambient tower")
            # found fires at the first basis element b0*g^m, b0 = 1
            if m == 1:
                continue  # g already lies in the field generated so far
            self.relations.append((j, m, rel))
            self.step_degrees.append(m)
            basis = [(label + (i,), b * g**i) for i in range(m) for label, b in basis]
        self.basis = basis
        self.degree = 1
        for m in self.step_degrees:
            self.degree *= m
        self._ech = None
        self._tower = None

    def _echelon(self):
        if self._ech is None:
            ech = linalg.Echelon(self.K.one())
            for label, b in self.basis:
                ech.add(self._vec(b), label)
            self._ech = ech
        return self._ech

    def contains(self, e) -> bool:
        return self._echelon().express(self._vec(self.L.coerce(e))) is not None

    @property
    def tower(self) -> Tower:
        if self._tower is None:
            self._tower = self._to_tower()
        return self._tower

    def _to_tower(self) -> Tower:
        T = self.K
        for j, m, rel in self.relations:
            coeffs = [T.zero() for _ in range(m)]
            for (label, i), c in rel.items():
                coeffs[i] = coeffs[i] + T.coerce(c) * T.monomial(_pad(label, T.depth - self.depth), self.depth)
            poly = [-c for c in coeffs] + [T.one()]
            if upoly.derivative(poly):
                kind = SEPARABLE
            elif not any(poly[1:-1]):
                kind = INSEPARABLE
            else:
                raise RebasingFailed("an inseparable minimal polynomial is not a pure radical")
            T = T.adjoin(poly, kind, gen=_fresh(T, self.names[j]), certificate="proved")
        return T

    def embed(self, e):
        """The element e of L as an element of the rebuilt tower, or None."""
        combo = self._echelon().express(self._vec(self.L.coerce(e)))
        if combo is None:
            return None
        T = self.tower
        acc = T.zero()
        for label, c in combo.items():
            acc = acc + T.coerce(c) * T.monomial(label, self.depth)
        return acc

    def minimal_polynomial(self):
        """Minimal polynomial of the first generator over the prefix field."""
        g = self.generators[0]
        if not self.relations or self.relations[0][0] != 0:
            return [-self.K.coerce(g.restrict(self.depth)) if g.in_prefix(self.depth) else None, self.K.one()]
        _, m, rel = self.relations[0]
        coeffs = [self.K.zero() for _ in range(m)]
        for ((), i), c in rel.items():
            coeffs[i] = coeffs[i] + c
        return [-c for c in coeffs] + [self.K.one()]


def _pad(label, n):
    return tuple(label) + (0,) * (n - len(label))


def _fresh(T, name):
    if name is not None and name not in T.names() and T.base.resolve(name) is None:
        return name
    return None


def minimal_polynomial(e, depth: int = 0):
    """Monic minimal polynomial of e over the prefix tower of the given depth."""
    T = e.tower
    if e.in_prefix(depth):
        K = T.prefix(depth)
        return [-e.restrict(depth), K.one()]
    return GeneratedField(T, depth, [e]).minimal_polynomial()


def compositum_twist(k: Tower, L: Tower, r: int) -> GeneratedField:
    """k(L^(p^r)) inside L, generated by p^r-th powers of L's generators."""
    if not k.is_prefix_of(L):
        raise ValueError("L must extend k")
    p = L.char
    q = p**r if p else 1
    gens = [L.gen(s.gen) ** q for s in L.steps[k.depth:]]
    return GeneratedField(L, k.depth, gens)


class SeparableSplit:
    def __init__(self, M: GeneratedField, L: Tower, k: Tower):
        self.M = M
        self.L = L
        self.k = k
        self.separable_degree = M.degree
        self.insep_degree = L.degree_over(k.depth) // M.degree
        self.insep_steps = [s.gen for s in L.steps[k.depth:] if s.kind == INSEPARABLE]

    @property
    def M_tower(self) -> Tower:
        return self.M.tower


def separable_closure_split(k: Tower, L: Tower) -> SeparableSplit:
    """Separable closure M of k in L, plus the purely inseparable remainder."""
    if not k.is_prefix_of(L):
        raise ValueError("L must extend k")
    steps = L.steps[k.depth:]
    if all(s.kind == SEPARABLE for s in steps):
        M = GeneratedField(L, k.depth, [L.gen(s.gen) for s in steps], [s.gen for s in steps])
        return SeparableSplit(M, L, k)
    p = L.char
    n = L.degree_over(k.depth)
    N = 0
    while n % p == 0:
        n //= p
        N += 1
    twisted = compositum_twist(k, L, N)
    sep = [s for s in steps if s.kind == SEPARABLE and twisted.contains(L.gen(s.gen))]
    gens = [L.gen(s.gen) for s in sep] + twisted.generators
    names = [s.gen for s in sep] + [None] * len(twisted.generators)
    M = GeneratedField(L, k.depth, gens, names)
    return SeparableSplit(M, L, k)


class PrefixField:
    """A generated field that happens to be a prefix of the ambient tower."""

    def __init__(self, L: Tower, depth: int, top: int):
        self.L = L
        self.depth = depth
        self.K = L.prefix(depth)
        self.top = top
        self.degree = L.prefix(top).degree_over(depth)
        self.step_degrees = [s.degree for s in L.steps[depth:top]]

    @property
    def tower(self) -> Tower:
        return self.L.prefix(self.top)

    def contains(self, e) -> bool:
        return self.L.coerce(e).in_prefix(self.top)

    def embed(self, e):
        e = self.L.coerce(e)
        return e.restrict(self.top) if e.in_prefix(self.top) else None


def prefix_or_generated(L: Tower, depth: int, elements):
    """K(elements), recognizing the common case of a prefix of L."""
    rest = [L.coerce(e) for e in elements]
    rest = [e for e in rest if not e.in_prefix(depth)]
    gens = {}
    for i, s in enumerate(L.steps):
        if i >= depth:
            gens[L.gen(s.gen)] = i + 1
    idx = set()
    for e in rest:
        if e not in gens:
            idx = None
            break
        idx.add(gens[e])
    if idx is not None and idx == set(range(depth + 1, depth + len(idx) + 1)):
        return PrefixField(L, depth, depth + len(idx))
    return GeneratedField(L, depth, rest)
