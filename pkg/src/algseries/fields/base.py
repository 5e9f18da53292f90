"""Rational function fields over a prime field with lazily indexed families.

``BaseField(char, families=("t",), generators=("u",))`` is
``F(t1, t2, ..., u)``.  Family members never need to be declared: an
element simply mentions ``t7`` and the variable exists.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import DuplicateGenerator
from . import mpoly as mp
from .prime import PrimeField, check_characteristic


class RatFunc:
    """Reduced fraction num/den of sparse polynomials, den normalized monic."""

    __slots__ = ("F", "num", "den", "_hash")

    def __init__(self, F: PrimeField, num: dict, den: dict | None = None, reduced=False):
        self.F = F
        self._hash = None
        if den is None or (len(den) == 1 and den.get(mp.ONE) == F.one):
            self.num, self.den = num, {mp.ONE: F.one}
            return
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = {}, {mp.ONE: F.one}
            return
        if mp.is_const(den):
            c = F.inv(den[mp.ONE])
            self.num, self.den = mp.scale(F, num, c), {mp.ONE: F.one}
            return
        if not reduced:
            _, num, den = mp.cofactors(F, num, den)
        lc = den[mp.lead(den)]
        if lc != F.one:
            c = F.inv(lc)
            num, den = mp.scale(F, num, c), mp.scale(F, den, c)
        if mp.is_const(den):
            den = {mp.ONE: F.one}
        self.num, self.den = num, den

    # -- predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_poly(self) -> bool:
        return len(self.den) == 1 and mp.ONE in self.den

    def is_const(self) -> bool:
        return self.is_poly() and mp.is_const(self.num)

    def const_value(self):
        return self.num.get(mp.ONE, self.F.zero)

    def variables(self) -> set:
        return mp.variables(self.num) | mp.variables(self.den)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        F = self.F
        if not other.num:
            return self
        if not self.num:
            return other
        if self.is_poly() and other.is_poly():
            return RatFunc(F, mp.add(F, self.num, other.num))
        if self.den == other.den:
            return RatFunc(F, mp.add(F, self.num, other.num), self.den)
        num = mp.add(F, mp.mul(F, self.num, other.den), mp.mul(F, other.num, self.den))
        return RatFunc(F, num, mp.mul(F, self.den, other.den))

    def __neg__(self):
        return RatFunc(self.F, mp.neg(self.F, self.num), self.den, reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.F
        if not self.num or not other.num:
            return RatFunc(F, {})
        if self.is_poly() and other.is_poly():
            return RatFunc(F, mp.mul(F, self.num, other.num))
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not mp.is_const(d2) and not mp.is_const(n1):
            _, n1, d2 = mp.cofactors(F, n1, d2)
        if not mp.is_const(d1) and not mp.is_const(n2):
            _, n2, d1 = mp.cofactors(F, n2, d1)
        return RatFunc(F, mp.mul(F, n1, n2), mp.mul(F, d1, d2), reduced=True)

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.F, self.den, self.num, reduced=True)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        F = self.F
        return RatFunc(F, mp.power(F, self.num, n), mp.power(F, self.den, n), reduced=True)

    def scale(self, c):
        return RatFunc(self.F, mp.scale(self.F, self.num, c), self.den, reduced=True)

    # -- Frobenius ----------------------------------------------------------
    def pbasis(self):
        """Components over the subfield of p-th powers.

        Returns ``{mono: Q}`` with ``self = sum mono * Q**p`` and every exponent
        of ``mono`` in [0, p).  Only meaningful in characteristic p.
        """
        F = self.F
        p = F.char
        # N/D = N D^(p-1) / D^p
        shifted = mp.mul(F, self.num, mp.power(F, self.den, p - 1))
        parts = mp.pbasis_split(F, shifted)
        return {m: RatFunc(F, q, self.den) for m, q in parts.items()}

    def pth_root(self):
        if not self.F.char:
            return self
        parts = self.pbasis()
        if not parts:
            return self
        if set(parts) != {mp.ONE}:
            return None
        return parts[mp.ONE]

    def __repr__(self):
        return f"RatFunc({self.fmt()})"

    def fmt(self) -> str:
        n = mp.fmt(self.F, self.num)
        if self.is_poly():
            return n
        if len(self.num) > 1:
            n = f"({n})"
        d = mp.fmt(self.F, self.den)
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def sort_key(self):
        F = self.F
        items = sorted(self.num.items())
        return (len(self.den), len(items), [(m, F.key(c)) for m, c in items], sorted(self.den.items()))


class BaseField:
    """The rational function field F(families..., generators...)."""

    def __init__(self, char: int = 0, families=(), generators=()):
        check_characteristic(char)
        names = list(families) + list(generators)
        if len(set(names)) != len(names):
            raise DuplicateGenerator(f"generator names repeat: {names}")
        for g in generators:
            for f in families:
                if g.startswith(f) and g[len(f):].isdigit():
                    raise DuplicateGenerator(f"{g} collides with family {f}")
        self.char = char
        self.F = PrimeField(char)
        self.families = tuple(families)
        self.generators = tuple(generators)

    def __eq__(self, other):
        return (
            isinstance(other, BaseField)
            and self.char == other.char
            and self.families == other.families
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.char, self.families, self.generators))

    def __repr__(self):
        return f"BaseField(char={self.char}, families={self.families}, generators={self.generators})"

    def zero(self) -> RatFunc:
        return RatFunc(self.F, {})

    def one(self) -> RatFunc:
        return RatFunc(self.F, mp.const(self.F, 1))

    def const(self, c) -> RatFunc:
        if isinstance(c, str):
            c = Fraction(c)
        return RatFunc(self.F, mp.const(self.F, c))

    def resolve(self, name: str):
        """Map a generator name (``u`` or ``t12``) to a variable, or None."""
        if name in self.generators:
            return (name, 0)
        for f in self.families:
            rest = name[len(f):]
            if name.startswith(f) and rest.isdigit() and int(rest) >= 1:
                return (f, int(rest))
        return None

    def gen(self, name: str, index: int | None = None) -> RatFunc:
        v = (name, index) if index is not None else self.resolve(name)
        if v is None or (index is not None and name not in self.families):
            raise KeyError(f"unknown generator {name}{index or ''}")
        return RatFunc(self.F, mp.var(self.F, v))
