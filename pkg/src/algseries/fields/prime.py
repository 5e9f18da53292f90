"""Prime fields: the rationals and Z/pZ."""
from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _int_root(n: int, q: int):
    """Exact integer q-th root of n, or None."""
    if n < 0:
        if q % 2 == 0:
            return None
        r = _int_root(-n, q)
        return None if r is None else -r
    if n in (0, 1):
        return n
    lo, hi = 0, 1 << (n.bit_length() // q + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**q < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**q == n else None


class PrimeField:
    """Arithmetic in Q (char 0, Fraction elements) or F_p (int elements in [0, p))."""

    def __init__(self, char: int):
        self.char = char
        self.zero = 0 if char else Fraction(0)
        self.one = 1 if char else Fraction(1)

    def __repr__(self):
        return f"PrimeField({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("PrimeField", self.char))

    def __call__(self, x):
        p = self.char
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"{x} has no image in F_{p}")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.char) if self.char else 1 / a

    def pow(self, a, n):
        if self.char:
            return pow(a, n, self.char) if n >= 0 else pow(self.inv(a), -n, self.char)
        return a**n

    def root(self, a, q: int):
        """Some q-th root of a in the prime field, or None."""
        p = self.char
        if p:
            a %= p
            if a in (0, 1):
                return a
            while q % p == 0:
                q //= p  # Frobenius is the identity on F_p
            if q == 1:
                return a
            for z in range(1, p):
                if pow(z, q, p) == a:
                    return z
            return None
        num = _int_root(a.numerator, q)
        den = _int_root(a.denominator, q)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def key(self, a):
        """Sort key: small magnitude first, positive before negative."""
        if self.char:
            return (min(a, self.char - a), a > self.char // 2)
        return (abs(a), a < 0, a.denominator)

    def fmt(self, a) -> str:
        if self.char:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def check_characteristic(char: int) -> None:
    from ..errors import NonPrimeCharacteristic

    if char != 0 and not _is_prime(char):
        raise NonPrimeCharacteristic(f"characteristic {char} is neither 0 nor prime")
