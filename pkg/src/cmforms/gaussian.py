"""Exact complex scalars with rational real and imaginary parts.

A value is stored as a normalized integer triple ``(a, b, d)`` standing for
``(a + b*i) / d`` with ``d > 0`` and ``gcd(a, b, d) == 1``.  Carrying one
shared denominator instead of a pair of :class:`fractions.Fraction` objects
keeps products cheap inside the elimination kernels while every operation
stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _build(a: int, b: int, d: int) -> "GaussianRational":
    """Normalize a raw triple into lowest terms with a positive denominator."""
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(a, b, d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    q = object.__new__(GaussianRational)
    q.a = a
    q.b = b
    q.d = d
    return q


class GaussianRational:
    """A complex number a + b*i with arbitrary-precision rational a and b."""

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part must be rational when re is already complex")
            self.a, self.b, self.d = re.a, re.b, re.d
            return
        fre = Fraction(re)
        fim = Fraction(im)
        d = fre.denominator * fim.denominator // gcd(fre.denominator, fim.denominator)
        a = fre.numerator * (d // fre.denominator)
        b = fim.numerator * (d // fim.denominator)
        g = gcd(a, b, d)
        if g > 1:
            a //= g
            b //= g
            d //= g
        self.a = a
        self.b = b
        self.d = d

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_real(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "GaussianRational":
        return _build(self.a, -self.b, self.d)

    def inverse(self) -> "GaussianRational":
        # 1 / ((a+bi)/d) = d*(a-bi) / (a^2+b^2)
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("inverse of zero")
        return _build(self.d * self.a, -self.d * self.b, self.a * self.a + self.b * self.b)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __neg__(self) -> "GaussianRational":
        return _build(-self.a, -self.b, self.d)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _build(
            self.a * other.d + other.a * self.d,
            self.b * other.d + other.b * self.d,
            self.d * other.d,
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _build(
            self.a * other.d - other.a * self.d,
            self.b * other.d - other.b * self.d,
            self.d * other.d,
        )

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return _build(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __str__(self) -> str:
        if self.b == 0:
            return str(Fraction(self.a, self.d))
        if self.a == 0:
            return f"{Fraction(self.b, self.d)}i"
        im = Fraction(self.b, self.d)
        sign = "+" if im > 0 else "-"
        return f"{Fraction(self.a, self.d)}{sign}{abs(im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"


def _coerce(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, int):
        return _build(value, 0, 1)
    if isinstance(value, Fraction):
        return _build(value.numerator, 0, value.denominator)
    return None


def gq(value, im=0) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational, optionally with an imaginary part."""
    if im == 0:
        got = _coerce(value)
        if got is None:
            raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
        return got
    return GaussianRational(value, im)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
MINUS_ONE = GaussianRational(-1)
I = GaussianRational(0, 1)
