"""Arithmetic scans behind the dimension-count classification of subgroups.

Four ingredients, all exact:

* block structures: partitions of n whose squared sum can carry a group of a
  prescribed dimension,
* the factorization inequality: for n = n_1 * ... * n_k with k >= 2 factors
  each >= 2, the squares sum to at most n^2 - 2n,
* a scan of the minimal-dimension table of complex simple Lie algebras
  against the dimension formulas n^2-2n+1, n^2-2n, n^2-2n-1,
* the Weyl dimension formula on classical root systems, used to decide which
  ambient dimensions an algebra can actually act on irreducibly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


@dataclass(frozen=True)
class SimpleAlgebraRow:
    """One row of the minimal faithful irreducible dimension table."""

    family: str  # "sl", "o", "sp", "e6", "e7", "e8", "f4", "g2"
    parameter: int  # k for sl_k / o_k / sp_2k, 0 for the exceptional rows
    min_faithful_dim: int
    algebra_dim: int

    @property
    def label(self) -> str:
        if self.family == "sl":
            return f"sl_{self.parameter}"
        if self.family == "o":
            return f"o_{self.parameter}"
        if self.family == "sp":
            return f"sp_{2 * self.parameter}"
        return self.family


_EXCEPTIONALS = (
    SimpleAlgebraRow("e6", 0, 27, 78),
    SimpleAlgebraRow("e7", 0, 56, 133),
    SimpleAlgebraRow("e8", 0, 248, 248),
    SimpleAlgebraRow("f4", 0, 26, 52),
    SimpleAlgebraRow("g2", 0, 7, 14),
)


def table_rows(max_rep_dim: int) -> list[SimpleAlgebraRow]:
    """All table rows whose minimal faithful dimension is at most the bound.

    Orthogonal rows start at size 7; the smaller orthogonal algebras are
    covered by their isomorphisms with the sl/sp families.
    """
    rows = [
        SimpleAlgebraRow("sl", k, k, k * k - 1) for k in range(2, max_rep_dim + 1)
    ]
    rows += [
        SimpleAlgebraRow("o", k, k, k * (k - 1) // 2) for k in range(7, max_rep_dim + 1)
    ]
    rows += [
        SimpleAlgebraRow("sp", k, 2 * k, 2 * k * k + k)
        for k in range(2, max_rep_dim // 2 + 1)
    ]
    rows += [row for row in _EXCEPTIONALS if row.min_faithful_dim <= max_rep_dim]
    return rows


DIM_FORMULAS = {
    "n2-2n+1": lambda n: n * n - 2 * n + 1,
    "n2-2n": lambda n: n * n - 2 * n,
    "n2-2n-1": lambda n: n * n - 2 * n - 1,
}


def block_structures(n: int, d: int) -> list[tuple[int, ...]]:
    """Partitions n = n_1 + ... + n_m (descending) with sum of squares >= d.

    These are the splittings of the ambient space into invariant blocks that
    leave room for a group of dimension d, since the group embeds in the
    product of the block unitary groups.
    """
    if n < 1:
        raise ValueError("n must be positive")

    def parts(total: int, largest: int) -> list[tuple[int, ...]]:
        if total == 0:
            return [()]
        out = []
        for first in range(min(total, largest), 0, -1):
            out.extend((first,) + rest for rest in parts(total - first, first))
        return out

    hits = [p for p in parts(n, n) if sum(x * x for x in p) >= d]
    return sorted(hits, reverse=True)


@lru_cache(maxsize=None)
def factorizations(n: int) -> tuple[tuple[int, ...], ...]:
    """All multisets of factors >= 2 (descending) with product n, incl. (n,)."""

    def expand(m: int, largest: int) -> list[tuple[int, ...]]:
        out = []
        d = min(m, largest)
        while d >= 2:
            if m % d == 0:
                rest = m // d
                if rest == 1:
                    out.append((d,))
                else:
                    out.extend((d,) + tail for tail in expand(rest, d))
            d -= 1
        return out

    return tuple(expand(n, n))


def factorization_bound_check(n_max: int) -> bool:
    """Verify sum n_j^2 <= n^2 - 2n over all k >= 2 factorizations, n <= n_max."""
    if n_max < 4:
        raise ValueError("the check needs n_max >= 4 (the first composite with two factors)")
    for n in range(4, n_max + 1):
        bound = n * n - 2 * n
        for factors in factorizations(n):
            if len(factors) >= 2 and sum(f * f for f in factors) > bound:
                return False
    return True


def tight_factorizations(n_max: int) -> list[tuple[int, tuple[int, ...]]]:
    """Factorizations meeting the bound with equality (witnesses of sharpness)."""
    out = []
    for n in range(4, n_max + 1):
        bound = n * n - 2 * n
        for factors in factorizations(n):
            if len(factors) >= 2 and sum(f * f for f in factors) == bound:
                out.append((n, factors))
    return out


def simple_algebra_scan(formula: str, n_max: int) -> list[tuple[SimpleAlgebraRow, int]]:
    """All (table row, n) with algebra_dim = formula(n) and min dim <= n <= n_max.

    Pure arithmetic screening; whether the algebra really acts irreducibly in
    dimension n is decided separately by rep_existence_filter.
    """
    if formula not in DIM_FORMULAS:
        raise ValueError(f"unknown dimension formula {formula!r}; pick one of {sorted(DIM_FORMULAS)}")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    f = DIM_FORMULAS[formula]
    rows = table_rows(n_max)
    hits = []
    for n in range(2, n_max + 1):
        d = f(n)
        for row in rows:
            if row.algebra_dim == d and row.min_faithful_dim <= n:
                hits.append((row, n))
    return hits


# ------------------------------------------------------------- root systems


@dataclass(frozen=True)
class RootSystem:
    """A classical root system in its standard Euclidean realization."""

    type: str  # "A", "B", "C" or "D"
    rank: int

    def __post_init__(self):
        if self.type not in ("A", "B", "C", "D"):
            raise ValueError(f"unknown root system type {self.type!r}")
        minimum = {"A": 1, "B": 1, "C": 1, "D": 2}[self.type]
        if self.rank < minimum:
            raise ValueError(f"type {self.type} needs rank >= {minimum}")

    @property
    def euclidean_dim(self) -> int:
        return self.rank + 1 if self.type == "A" else self.rank

    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return _positive_roots(self.type, self.rank)

    def rho(self) -> tuple[Fraction, ...]:
        """Half the sum of the positive roots."""
        dim = self.euclidean_dim
        acc = [Fraction(0)] * dim
        for root in self.positive_roots():
            for i, x in enumerate(root):
                acc[i] += x
        return tuple(x / 2 for x in acc)

    def __str__(self) -> str:
        return f"{self.type}{self.rank}"


@lru_cache(maxsize=None)
def _positive_roots(type_: str, rank: int) -> tuple[tuple[int, ...], ...]:
    def unit(dim, i, scale=1):
        v = [0] * dim
        v[i] = scale
        return v

    roots = []
    if type_ == "A":
        dim = rank + 1
        for i in range(dim):
            for j in range(i + 1, dim):
                v = unit(dim, i)
                v[j] = -1
                roots.append(tuple(v))
    else:
        dim = rank
        for i in range(dim):
            for j in range(i + 1, dim):
                v = unit(dim, i)
                v[j] = -1
                roots.append(tuple(v))
                v = unit(dim, i)
                v[j] = 1
                roots.append(tuple(v))
        if type_ == "B":
            roots.extend(tuple(unit(dim, i)) for i in range(dim))
        elif type_ == "C":
            roots.extend(tuple(unit(dim, i, 2)) for i in range(dim))
    return tuple(roots)


def parse_algebra(text: str) -> RootSystem:
    """Parse a label such as "a2", "B3" or "d4"."""
    text = text.strip()
    if len(text) < 2 or text[0].upper() not in "ABCD":
        raise ValueError(f"bad algebra label {text!r}; expected e.g. a2, b3, c2, d4")
    try:
        rank = int(text[1:])
    except ValueError:
        raise ValueError(f"bad algebra label {text!r}") from None
    return RootSystem(text[0].upper(), rank)


def _weight_vector(rs: RootSystem, labels: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Euclidean coordinates of the dominant weight with the given labels."""
    k = rs.rank
    m = [Fraction(x) for x in labels]
    if rs.type == "A":
        tail = [Fraction(0)] * (k + 1)
        for i in range(k - 1, -1, -1):
            tail[i] = tail[i + 1] + m[i]
        return tuple(tail)
    if rs.type == "B":
        coords = []
        for j in range(k):
            total = sum(m[j:k - 1], Fraction(0)) + m[k - 1] / 2
            coords.append(total)
        return tuple(coords)
    if rs.type == "C":
        coords = []
        for j in range(k):
            coords.append(sum(m[j:], Fraction(0)))
        return tuple(coords)
    # type D
    coords = []
    for j in range(k - 2):
        coords.append(sum(m[j:k - 2], Fraction(0)) + (m[k - 2] + m[k - 1]) / 2)
    coords.append((m[k - 2] + m[k - 1]) / 2)
    coords.append((m[k - 1] - m[k - 2]) / 2)
    return tuple(coords)


def weyl_dim(rs: RootSystem, labels: tuple[int, ...] | list[int]) -> int:
    """Dimension of the irreducible representation with the given labels.

    Labels are the non-negative integer coefficients of the weight on the
    fundamental weights.  Computed as the exact product over positive roots
    of <lambda+rho, alpha> / <rho, alpha>.
    """
    labels = tuple(labels)
    if len(labels) != rs.rank:
        raise ValueError(f"expected {rs.rank} weight labels, got {len(labels)}")
    if any((not isinstance(x, int)) or x < 0 for x in labels):
        raise ValueError("weight labels must be non-negative integers (dominant integral)")
    lam = _weight_vector(rs, labels)
    rho = rs.rho()
    top = [a + b for a, b in zip(lam, rho)]
    result = Fraction(1)
    for root in rs.positive_roots():
        num = sum((x * r for x, r in zip(top, root)), Fraction(0))
        den = sum((x * r for x, r in zip(rho, root)), Fraction(0))
        result *= num / den
    if result.denominator != 1:
        raise ArithmeticError("Weyl dimension did not come out integral")
    return int(result)


def irrep_dims_upto(rs: RootSystem, bound: int) -> set[int]:
    """All irreducible dimensions at most the bound.

    The Weyl dimension is strictly increasing in every weight label, so a
    breadth-first search from the zero weight with pruning is exhaustive.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    dims: set[int] = set()
    zero = (0,) * rs.rank
    frontier = {zero}
    seen = {zero}
    while frontier:
        next_frontier = set()
        for weight in frontier:
            d = weyl_dim(rs, weight)
            if d > bound:
                continue
            dims.add(d)
            for i in range(rs.rank):
                bumped = weight[:i] + (weight[i] + 1,) + weight[i + 1:]
                if bumped not in seen:
                    seen.add(bumped)
                    next_frontier.add(bumped)
        frontier = next_frontier
    return dims


def _orthogonal_root_system(size: int) -> RootSystem:
    if size % 2:
        return RootSystem("B", (size - 1) // 2)
    return RootSystem("D", size // 2)


def rep_existence_filter(
    hits: list[tuple[SimpleAlgebraRow, int]]
) -> list[tuple[SimpleAlgebraRow, int]]:
    """Keep scan hits whose algebra has an irreducible representation of dimension n.

    Classical families are decided with the Weyl dimension search; the
    exceptional rows carry only their tabulated minimal dimension.
    """
    kept = []
    for row, n in hits:
        if row.family == "sl":
            rs = RootSystem("A", row.parameter - 1)
            ok = n in irrep_dims_upto(rs, n)
        elif row.family == "o":
            ok = n >= row.min_faithful_dim and n in irrep_dims_upto(
                _orthogonal_root_system(row.parameter), n
            )
        elif row.family == "sp":
            ok = n >= row.min_faithful_dim and n in irrep_dims_upto(
                RootSystem("C", row.parameter), n
            )
        else:
            ok = n == row.min_faithful_dim
        if ok:
            kept.append((row, n))
    return kept
