"""Sparse exact polynomials in z_1..z_n, their conjugates and the real variable u.

A polynomial is a map from monomials to coefficients.  A monomial records the
exponent vector of the z block, the exponent vector of the conjugate block and
the power of u:

    z1^2 * zb2 * u^3   ->   Monomial(zexp=(2, 0), zbexp=(0, 1), uexp=3)

Coefficients live in the affine-linear ring over the Gaussian rationals: a
coefficient is a scalar plus a linear combination of named real unknowns.
Products of two unknown-bearing coefficients are rejected; everything in scope
is linear in the unknowns.

The monomial order is degree-lexicographic with the z block before the
conjugate block before u, so rendering and constraint extraction are
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .gaussian import GaussianRational, ONE, ZERO, gq


class Monomial(NamedTuple):
    zexp: tuple[int, ...]
    zbexp: tuple[int, ...]
    uexp: int

    @property
    def zdegree(self) -> int:
        return sum(self.zexp)

    @property
    def zbdegree(self) -> int:
        return sum(self.zbexp)

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.zdegree, self.zbdegree)

    @property
    def weight(self) -> int:
        """Chern-Moser weight: z and zb count 1, u counts 2."""
        return self.zdegree + self.zbdegree + 2 * self.uexp

    def order_key(self):
        return (self.zdegree + self.zbdegree + self.uexp, self.zexp, self.zbexp, self.uexp)

    def conj(self) -> "Monomial":
        return Monomial(self.zbexp, self.zexp, self.uexp)

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(
            tuple(x + y for x, y in zip(self.zexp, other.zexp)),
            tuple(x + y for x, y in zip(self.zbexp, other.zbexp)),
            self.uexp + other.uexp,
        )


def unit_monomial(n: int) -> Monomial:
    return Monomial((0,) * n, (0,) * n, 0)


class Coefficient:
    """A scalar plus an exact linear form in named real unknowns."""

    __slots__ = ("constant", "terms")

    def __init__(self, constant=ZERO, terms: Mapping[str, GaussianRational] | None = None):
        self.constant = gq(constant)
        if terms:
            self.terms = {name: gq(c) for name, c in terms.items() if not gq(c).is_zero()}
        else:
            self.terms = {}

    @classmethod
    def scalar(cls, value) -> "Coefficient":
        return cls(gq(value))

    @classmethod
    def unknown(cls, name: str, scale=ONE) -> "Coefficient":
        return cls(ZERO, {name: gq(scale)})

    def is_scalar(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return self.constant.is_zero() and not self.terms

    def __add__(self, other: "Coefficient") -> "Coefficient":
        terms = dict(self.terms)
        for name, c in other.terms.items():
            s = terms.get(name, ZERO) + c
            if s.is_zero():
                terms.pop(name, None)
            else:
                terms[name] = s
        out = object.__new__(Coefficient)
        out.constant = self.constant + other.constant
        out.terms = terms
        return out

    def __neg__(self) -> "Coefficient":
        out = object.__new__(Coefficient)
        out.constant = -self.constant
        out.terms = {name: -c for name, c in self.terms.items()}
        return out

    def __sub__(self, other: "Coefficient") -> "Coefficient":
        return self + (-other)

    def scale(self, factor: GaussianRational) -> "Coefficient":
        if factor.is_zero():
            return Coefficient()
        out = object.__new__(Coefficient)
        out.constant = self.constant * factor
        out.terms = {name: c * factor for name, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, Coefficient):
            if self.terms and other.terms:
                raise ValueError("product of two unknown-bearing coefficients is not supported")
            if other.terms:
                return other.scale(self.constant)
            return self.scale(other.constant)
        return self.scale(gq(other))

    __rmul__ = __mul__

    def conjugate(self) -> "Coefficient":
        out = object.__new__(Coefficient)
        out.constant = self.constant.conjugate()
        out.terms = {name: c.conjugate() for name, c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            if self.terms:
                return NotImplemented
            return self.constant == other
        return self.constant == other.constant and self.terms == other.terms

    def __hash__(self):
        return hash((self.constant, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        parts = []
        if not self.constant.is_zero() or not self.terms:
            parts.append(str(self.constant))
        for name in sorted(self.terms):
            parts.append(f"{self.terms[name]}*{name}")
        return " + ".join(parts)


class Polynomial:
    """Exact sparse polynomial; immutable by convention after construction."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Coefficient] | None = None):
        if n < 1:
            raise ValueError("ambient dimension must be at least 1")
        self.n = n
        self.terms: dict[Monomial, Coefficient] = {}
        if terms:
            for mono, coeff in terms.items():
                if not coeff.is_zero():
                    self.terms[mono] = coeff

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Coefficient]) -> "Polynomial":
        """Internal constructor that trusts the caller to have pruned zeros."""
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, value) -> "Polynomial":
        c = gq(value)
        if c.is_zero():
            return cls.zero(n)
        return cls._raw(n, {unit_monomial(n): Coefficient(c)})

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(n, 1)

    @classmethod
    def z(cls, n: int, alpha: int) -> "Polynomial":
        _check_index(n, alpha)
        e = [0] * n
        e[alpha - 1] = 1
        return cls._raw(n, {Monomial(tuple(e), (0,) * n, 0): Coefficient(ONE)})

    @classmethod
    def zb(cls, n: int, alpha: int) -> "Polynomial":
        _check_index(n, alpha)
        e = [0] * n
        e[alpha - 1] = 1
        return cls._raw(n, {Monomial((0,) * n, tuple(e), 0): Coefficient(ONE)})

    @classmethod
    def u(cls, n: int) -> "Polynomial":
        return cls._raw(n, {Monomial((0,) * n, (0,) * n, 1): Coefficient(ONE)})

    @classmethod
    def from_monomial(cls, n: int, mono: Monomial, coeff: Coefficient | GaussianRational | int = 1) -> "Polynomial":
        if len(mono.zexp) != n or len(mono.zbexp) != n:
            raise ValueError("monomial exponent length does not match the ambient dimension")
        if not isinstance(coeff, Coefficient):
            coeff = Coefficient(gq(coeff))
        if coeff.is_zero():
            return cls.zero(n)
        return cls._raw(n, {mono: coeff})

    # ------------------------------------------------------------- arithmetic

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        if other.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = terms.get(mono)
            s = coeff if s is None else s + coeff
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return Polynomial._raw(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Coefficient):
            if other.terms and self.has_unknowns():
                raise ValueError("product of two unknown-bearing operands")
            terms = {}
            for mono, coeff in self.terms.items():
                s = coeff * other
                if not s.is_zero():
                    terms[mono] = s
            return Polynomial._raw(self.n, terms)
        if not isinstance(other, Polynomial):
            return self * Coefficient(gq(other))
        if other.n != self.n:
            raise ValueError(f"ambient dimension mismatch: {self.n} vs {other.n}")
        if self.has_unknowns() and other.has_unknowns():
            raise ValueError("product of two unknown-bearing operands")
        terms: dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1.mul(m2)
                c = c1 * c2
                s = terms.get(mono)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = s
        return Polynomial._raw(self.n, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Polynomial.one(self.n)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # ---------------------------------------------------------- differentiation

    def partial_z(self, alpha: int) -> "Polynomial":
        """Formal partial derivative with respect to z_alpha (1-based)."""
        _check_index(self.n, alpha)
        i = alpha - 1
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self.terms.items():
            e = mono.zexp[i]
            if e == 0:
                continue
            z = list(mono.zexp)
            z[i] = e - 1
            terms[Monomial(tuple(z), mono.zbexp, mono.uexp)] = coeff.scale(gq(e))
        return Polynomial._raw(self.n, terms)

    def partial_zb(self, alpha: int) -> "Polynomial":
        """Formal partial derivative with respect to the conjugate variable zb_alpha."""
        _check_index(self.n, alpha)
        i = alpha - 1
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self.terms.items():
            e = mono.zbexp[i]
            if e == 0:
                continue
            zb = list(mono.zbexp)
            zb[i] = e - 1
            terms[Monomial(mono.zexp, tuple(zb), mono.uexp)] = coeff.scale(gq(e))
        return Polynomial._raw(self.n, terms)

    def partial_u(self) -> "Polynomial":
        terms: dict[Monomial, Coefficient] = {}
        for mono, coeff in self.terms.items():
            if mono.uexp == 0:
                continue
            terms[Monomial(mono.zexp, mono.zbexp, mono.uexp - 1)] = coeff.scale(gq(mono.uexp))
        return Polynomial._raw(self.n, terms)

    # ------------------------------------------------------------- structure

    def conjugate(self) -> "Polynomial":
        """Swap z with zb on every monomial and conjugate every coefficient."""
        return Polynomial._raw(self.n, {m.conj(): c.conjugate() for m, c in self.terms.items()})

    def bigraded_component(self, k: int, l: int) -> "Polynomial":
        """Sum of all terms of z-degree k and conjugate degree l, any u power."""
        if k < 0 or l < 0:
            raise ValueError("bidegree components need non-negative degrees")
        return Polynomial._raw(
            self.n,
            {m: c for m, c in self.terms.items() if m.zdegree == k and m.zbdegree == l},
        )

    def u_component(self, t: int) -> "Polynomial":
        return Polynomial._raw(self.n, {m: c for m, c in self.terms.items() if m.uexp == t})

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted({m.bidegree for m in self.terms})

    def u_degrees(self) -> list[int]:
        return sorted({m.uexp for m in self.terms})

    def max_weight(self) -> int:
        return max((m.weight for m in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def has_unknowns(self) -> bool:
        return any(c.terms for c in self.terms.values())

    def unknown_names(self) -> list[str]:
        names: set[str] = set()
        for c in self.terms.values():
            names.update(c.terms)
        return sorted(names)

    def unknown_slices(self) -> tuple["Polynomial", dict[str, "Polynomial"]]:
        """Split into a scalar part and one scalar polynomial per unknown.

        The polynomial equals  scalar_part + sum_name slice[name] * name.
        """
        const: dict[Monomial, Coefficient] = {}
        slices: dict[str, dict[Monomial, Coefficient]] = {}
        for mono, coeff in self.terms.items():
            if not coeff.constant.is_zero():
                const[mono] = Coefficient(coeff.constant)
            for name, c in coeff.terms.items():
                slices.setdefault(name, {})[mono] = Coefficient(c)
        return (
            Polynomial._raw(self.n, const),
            {name: Polynomial._raw(self.n, terms) for name, terms in sorted(slices.items())},
        )

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "Polynomial":
        """Evaluate P(Uz, conj(U) zb) for an exact n-by-n matrix U."""
        n = self.n
        rows = [[gq(matrix[i][j]) for j in range(n)] for i in range(n)]
        if len(matrix) != n:
            raise ValueError("matrix size does not match the ambient dimension")
        zforms = [
            sum((Polynomial.z(n, b + 1) * rows[a][b] for b in range(n)), Polynomial.zero(n))
            for a in range(n)
        ]
        zbforms = [
            sum((Polynomial.zb(n, b + 1) * rows[a][b].conjugate() for b in range(n)), Polynomial.zero(n))
            for a in range(n)
        ]
        zpow: dict[tuple[int, int], Polynomial] = {}
        zbpow: dict[tuple[int, int], Polynomial] = {}

        def powered(cache, forms, a, e):
            got = cache.get((a, e))
            if got is None:
                got = forms[a] ** e
                cache[(a, e)] = got
            return got

        out = Polynomial.zero(n)
        for mono, coeff in self.terms.items():
            part = Polynomial.from_monomial(n, Monomial((0,) * n, (0,) * n, mono.uexp))
            for a, e in enumerate(mono.zexp):
                if e:
                    part = part * powered(zpow, zforms, a, e)
            for a, e in enumerate(mono.zbexp):
                if e:
                    part = part * powered(zbpow, zbforms, a, e)
            out = out + part * coeff
        return out

    def items_sorted(self) -> list[tuple[Monomial, Coefficient]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].order_key())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda kv: kv[0].order_key()))))

    def __str__(self) -> str:
        from .textio import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {self})"


def _check_index(n: int, alpha: int) -> None:
    if not 1 <= alpha <= n:
        raise ValueError(f"variable index {alpha} out of range 1..{n}")


def norm_squared(n: int) -> Polynomial:
    """|z|^2 as a polynomial."""
    terms = {}
    for a in range(n):
        e = [0] * n
        e[a] = 1
        terms[Monomial(tuple(e), tuple(e), 0)] = Coefficient(ONE)
    return Polynomial._raw(n, terms)


def dot_squares(n: int) -> Polynomial:
    """z1^2 + ... + zn^2."""
    terms = {}
    for a in range(n):
        e = [0] * n
        e[a] = 2
        terms[Monomial(tuple(e), (0,) * n, 0)] = Coefficient(ONE)
    return Polynomial._raw(n, terms)


def collect_constraints(p: Polynomial) -> list[Coefficient]:
    """One linear equation "coefficient = 0" per stored monomial of p.

    The polynomial vanishes identically exactly when every returned equation
    holds.  Equations come out in the monomial order.
    """
    return [coeff for _, coeff in p.items_sorted()]


def random_small_polynomial(rng, n: int, max_terms: int = 4, max_exp: int = 2, max_u: int = 1) -> Polynomial:
    """Small random scalar polynomial for randomized test suites."""
    terms: dict[Monomial, Coefficient] = {}
    for _ in range(rng.randint(0, max_terms)):
        zexp = tuple(rng.randint(0, max_exp) for _ in range(n))
        zbexp = tuple(rng.randint(0, max_exp) for _ in range(n))
        mono = Monomial(zexp, zbexp, rng.randint(0, max_u))
        c = GaussianRational(
            Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
            Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
        )
        coeff = terms.get(mono, Coefficient()) + Coefficient(c)
        if coeff.is_zero():
            terms.pop(mono, None)
        else:
            terms[mono] = coeff
    return Polynomial(n, terms)
