"""Catalog of the unitary subgroups acting on normal-form surfaces.

Each catalog entry is a connected closed subgroup of U_n given by an explicit
Lie algebra basis of anti-Hermitian matrices with Gaussian-integer entries.
Invariance of polynomials is tested infinitesimally: for connected groups a
polynomial is invariant exactly when every basis element annihilates it.

Group specifier grammar (shared with the command line):

    so3            rotations of R^3 inside U_3
    circle-so3     the circle times SO_3 inside U_3
    u1xsu:<n>      U_1 x SU_{n-1} block matrices, n >= 3
    h:<k1>,<k2>:<n>  the cover-type subgroup diag(a, A), a in (det A)^(k1/k2)
    u1cubed        diagonal torus of U_3
    u2xu2          block-diagonal U_2 x U_2 in U_4
    su:<n>         SU_{n-1} in the lower block, n >= 3
    un:<n>         all of U_n
    u1xu:<n>       U_1 x U_{n-1} block matrices, n >= 2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .gaussian import GaussianRational, I, MINUS_ONE, ONE, ZERO, gq
from .linalg import ExactMatrix, rank
from .poly import Coefficient, Monomial, Polynomial

GROUP_KINDS = (
    "so3",
    "circle-so3",
    "u1xsu",
    "h",
    "u1cubed",
    "u2xu2",
    "su",
    "un",
    "u1xu",
)

_FIXED_N = {"so3": 3, "circle-so3": 3, "u1cubed": 3, "u2xu2": 4}


@dataclass(frozen=True)
class GroupSpec:
    """One catalogued subgroup of U_n."""

    kind: str
    n: int = 0
    k1: int | None = None
    k2: int | None = None

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise ValueError(f"unknown group kind {self.kind!r}")
        fixed = _FIXED_N.get(self.kind)
        if fixed is not None:
            if self.n == 0:
                object.__setattr__(self, "n", fixed)
            elif self.n != fixed:
                raise ValueError(f"group {self.kind} lives in dimension {fixed}, not {self.n}")
        elif self.n == 0:
            raise ValueError(f"group kind {self.kind} needs an explicit dimension")
        if self.kind in ("u1xsu", "su") and self.n < 3:
            raise ValueError(f"group {self.kind} needs n >= 3")
        if self.kind == "u1xu" and self.n < 2:
            raise ValueError("group u1xu needs n >= 2")
        if self.kind == "un" and self.n < 1:
            raise ValueError("group un needs n >= 1")
        if self.kind == "h":
            if self.n < 2:
                raise ValueError("group h needs n >= 2")
            if self.k1 is None or self.k2 is None:
                raise ValueError("group h needs the two integer exponents k1, k2")
            if self.k2 <= 0:
                raise ValueError("the exponent k2 must be positive")
            if gcd(self.k1, self.k2) != 1:
                raise ValueError("the exponents k1, k2 must be coprime")
        elif self.k1 is not None or self.k2 is not None:
            raise ValueError(f"group {self.kind} takes no exponents")

    def __str__(self) -> str:
        return format_group(self)


def parse_group(text: str) -> GroupSpec:
    """Parse a group specifier such as "so3", "h:1,2:3" or "u1xu:4"."""
    parts = text.strip().split(":")
    head = parts[0]
    try:
        if head in _FIXED_N or head in ("so3", "circle-so3", "u1cubed", "u2xu2"):
            if len(parts) != 1:
                raise ValueError(f"group {head} takes no parameters")
            return GroupSpec(head)
        if head in ("u1xsu", "su", "un", "u1xu"):
            if len(parts) != 2:
                raise ValueError(f"group {head} needs a dimension, e.g. {head}:3")
            return GroupSpec(head, int(parts[1]))
        if head == "h":
            if len(parts) != 3:
                raise ValueError("group h is written h:<k1>,<k2>:<n>")
            k1s, _, k2s = parts[1].partition(",")
            return GroupSpec("h", int(parts[2]), int(k1s), int(k2s))
    except ValueError as exc:
        raise ValueError(f"bad group specifier {text!r}: {exc}") from None
    raise ValueError(f"unknown group specifier {text!r}")


def format_group(spec: GroupSpec) -> str:
    if spec.kind in _FIXED_N:
        return spec.kind
    if spec.kind == "h":
        return f"h:{spec.k1},{spec.k2}:{spec.n}"
    return f"{spec.kind}:{spec.n}"


@dataclass(frozen=True)
class LieElement:
    """An n-by-n anti-Hermitian matrix over the Gaussian rationals."""

    n: int
    entries: tuple[tuple[GaussianRational, ...], ...]

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.entries[i][j]

    def is_anti_hermitian(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                if self.entries[j][i].conjugate() != -self.entries[i][j]:
                    return False
        return True

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def bracket(self, other: "LieElement") -> "LieElement":
        """Commutator [A, B] = AB - BA."""
        if self.n != other.n:
            raise ValueError("dimension mismatch in bracket")
        n = self.n
        grid = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                    a, b = other.entries[i][k], self.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc - a * b
                row.append(acc)
            grid.append(tuple(row))
        return LieElement(n, tuple(grid))


def _element(n: int, assignments: dict[tuple[int, int], GaussianRational]) -> LieElement:
    grid = [[ZERO] * n for _ in range(n)]
    for (i, j), value in assignments.items():
        grid[i][j] = value
    return LieElement(n, tuple(tuple(row) for row in grid))


def _real_pair(n: int, i: int, j: int) -> LieElement:
    """E_ij - E_ji (real antisymmetric)."""
    return _element(n, {(i, j): ONE, (j, i): MINUS_ONE})


def _imag_pair(n: int, i: int, j: int) -> LieElement:
    """i (E_ij + E_ji)."""
    return _element(n, {(i, j): I, (j, i): I})


def _imag_diag(n: int, i: int) -> LieElement:
    return _element(n, {(i, i): I})


def _su_block(n: int, block: list[int]) -> list[LieElement]:
    """Basis of su_k acting on the listed coordinates: traceless diagonals first."""
    out = [
        _element(n, {(block[a], block[a]): I, (block[a + 1], block[a + 1]): -I})
        for a in range(len(block) - 1)
    ]
    for x in range(len(block)):
        for y in range(x + 1, len(block)):
            out.append(_real_pair(n, block[x], block[y]))
            out.append(_imag_pair(n, block[x], block[y]))
    return out


def _u_block(n: int, block: list[int]) -> list[LieElement]:
    """Basis of u_k on the listed coordinates: diagonals first, then pairs."""
    out = [_imag_diag(n, i) for i in block]
    for x in range(len(block)):
        for y in range(x + 1, len(block)):
            out.append(_real_pair(n, block[x], block[y]))
            out.append(_imag_pair(n, block[x], block[y]))
    return out


@lru_cache(maxsize=None)
def lie_basis(spec: GroupSpec) -> tuple[LieElement, ...]:
    """Linearly independent anti-Hermitian generators; diagonal ones first."""
    n = spec.n
    if spec.kind == "so3":
        return (_real_pair(3, 0, 1), _real_pair(3, 0, 2), _real_pair(3, 1, 2))
    if spec.kind == "circle-so3":
        center = _element(3, {(i, i): I for i in range(3)})
        return (center,) + lie_basis(GroupSpec("so3"))
    if spec.kind == "u1cubed":
        return tuple(_imag_diag(3, i) for i in range(3))
    if spec.kind == "u2xu2":
        return tuple(
            [_imag_diag(4, i) for i in range(4)]
            + [_real_pair(4, 0, 1), _imag_pair(4, 0, 1), _real_pair(4, 2, 3), _imag_pair(4, 2, 3)]
        )
    if spec.kind == "un":
        return tuple(_u_block(n, list(range(n))))
    if spec.kind == "u1xu":
        return tuple([_imag_diag(n, 0)] + _u_block(n, list(range(1, n))))
    if spec.kind == "su":
        return tuple(_su_block(n, list(range(1, n))))
    if spec.kind == "u1xsu":
        return tuple([_imag_diag(n, 0)] + _su_block(n, list(range(1, n))))
    if spec.kind == "h":
        # Diagonal generators are scaled by k2 to keep Gaussian-integer entries;
        # scaling does not change the annihilated polynomials.
        k1 = gq(spec.k1)
        diag = [
            _element(n, {(0, 0): I * k1, (a, a): I * gq(spec.k2)})
            for a in range(1, n)
        ]
        off = []
        for x in range(1, n):
            for y in range(x + 1, n):
                off.append(_real_pair(n, x, y))
                off.append(_imag_pair(n, x, y))
        return tuple(diag + off)
    raise ValueError(f"unknown group kind {spec.kind!r}")


def group_dim(spec: GroupSpec) -> int:
    return len(lie_basis(spec))


def infinitesimal_action(element: LieElement, p: Polynomial) -> Polynomial:
    """Derivative of the linear action z -> Uz applied to a polynomial.

    Returns sum_a (Az)_a dP/dz_a + sum_a (conj(A) zb)_a dP/dzb_a; the result
    has the same bidegree and u-degree as each input term.
    """
    if element.n != p.n:
        raise ValueError(f"dimension mismatch: matrix is {element.n}, polynomial is {p.n}")
    n = p.n
    entries = element.entries
    acc: dict[Monomial, Coefficient] = {}

    def put(mono: Monomial, coeff: Coefficient):
        s = acc.get(mono)
        s = coeff if s is None else s + coeff
        if s.is_zero():
            acc.pop(mono, None)
        else:
            acc[mono] = s

    for mono, coeff in p.terms.items():
        zexp, zbexp, uexp = mono
        for alpha in range(n):
            e = zexp[alpha]
            if e:
                for beta in range(n):
                    a = entries[alpha][beta]
                    if a.is_zero():
                        continue
                    scale = a * gq(e)
                    if beta == alpha:
                        put(mono, coeff.scale(scale))
                    else:
                        z = list(zexp)
                        z[alpha] -= 1
                        z[beta] += 1
                        put(Monomial(tuple(z), zbexp, uexp), coeff.scale(scale))
            e = zbexp[alpha]
            if e:
                for beta in range(n):
                    a = entries[alpha][beta]
                    if a.is_zero():
                        continue
                    scale = a.conjugate() * gq(e)
                    if beta == alpha:
                        put(mono, coeff.scale(scale))
                    else:
                        zb = list(zbexp)
                        zb[alpha] -= 1
                        zb[beta] += 1
                        put(Monomial(zexp, tuple(zb), uexp), coeff.scale(scale))
    return Polynomial._raw(n, acc)


def is_invariant(p: Polynomial, spec: GroupSpec) -> bool:
    """True when every Lie algebra generator annihilates the polynomial."""
    if p.n != spec.n:
        raise ValueError(f"dimension mismatch: polynomial is {p.n}, group lives in {spec.n}")
    return all(infinitesimal_action(a, p).is_zero() for a in lie_basis(spec))


def _real_flatten(element: LieElement) -> list[GaussianRational]:
    """Real coordinates (Re, Im per entry) for real-linear span computations."""
    out = []
    for row in element.entries:
        for x in row:
            out.append(gq(x.re))
            out.append(gq(x.im))
    return out


def bracket_closure_check(spec: GroupSpec) -> bool:
    """Check [A_i, A_j] stays in the exact real span of the basis."""
    basis = lie_basis(spec)
    rows = [_real_flatten(a) for a in basis]
    base_rank = rank(ExactMatrix(rows))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidate = rows + [_real_flatten(basis[i].bracket(basis[j]))]
            if rank(ExactMatrix(candidate)) != base_rank:
                return False
    return True
