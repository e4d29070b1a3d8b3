"""Exact bases of group-invariant polynomial spaces per bidegree.

The group acts linearly on z only, so u is inert and a space is indexed by
the bidegree (k, l): the span of all monomials of z-degree k and conjugate
degree l.  A polynomial is invariant exactly when every Lie algebra generator
annihilates it, so the invariant space is the joint kernel of the generator
actions on the monomial basis.

The kernel is intersected one generator at a time, which keeps eliminations
small: diagonal generators act as pure monomial filters (their action scales
each monomial by its weight), and the first non-diagonal generator is solved
block by block on the connected components of its action matrix.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from .gaussian import GaussianRational, ONE, ZERO
from .groups import GroupSpec, LieElement, infinitesimal_action, lie_basis
from .linalg import ExactMatrix, kernel_basis, rank
from .normal_form import FormId
from .poly import Coefficient, Monomial, Polynomial, dot_squares, norm_squared

DEFAULT_MONOMIAL_CAP = 20000


class MonomialCapExceeded(RuntimeError):
    """Raised when a bidegree space is combinatorially larger than the cap."""

    def __init__(self, count: int, cap: int, k: int, l: int, n: int):
        super().__init__(
            f"bidegree ({k},{l}) at n={n} spans {count} monomials, above the cap {cap}; "
            "raise the cap to proceed"
        )
        self.count = count
        self.cap = cap


def monomial_cap() -> int:
    """Active cap on monomial-space size; CM_FORMS_DEGREE_CAP overrides."""
    raw = os.environ.get("CM_FORMS_DEGREE_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MONOMIAL_CAP


@dataclass(frozen=True)
class InvariantSpace:
    group: GroupSpec
    k: int
    l: int
    basis: tuple[Polynomial, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _exponent_vectors(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for marks in combinations_with_replacement(range(n), degree):
        vec = [0] * n
        for m in marks:
            vec[m] += 1
        out.append(tuple(vec))
    return sorted(out)


def bidegree_monomials(n: int, k: int, l: int) -> list[Monomial]:
    """All monomials of bidegree (k, l) with no u power, in monomial order."""
    monos = [
        Monomial(z, zb, 0)
        for z in _exponent_vectors(n, k)
        for zb in _exponent_vectors(n, l)
    ]
    monos.sort(key=lambda m: m.order_key())
    return monos


def _diagonal_weight(element: LieElement, mono: Monomial) -> GaussianRational:
    w = ZERO
    for alpha in range(element.n):
        e = mono.zexp[alpha] - mono.zbexp[alpha]
        if e:
            w = w + element.entries[alpha][alpha] * e
    return w


def _monomial_image(element: LieElement, mono: Monomial, n: int) -> dict[Monomial, GaussianRational]:
    img = infinitesimal_action(element, Polynomial.from_monomial(n, mono))
    return {m: c.constant for m, c in img.terms.items()}


def _kernel_by_components(
    element: LieElement, active: list[int], monos: list[Monomial]
) -> list[dict[int, GaussianRational]]:
    """Kernel of one generator on a set of pure monomials, solved per block.

    Two monomial columns interact only when their images share a monomial, so
    the kernel splits over connected components of the action matrix.
    """
    n = element.n
    images = {j: _monomial_image(element, monos[j], n) for j in active}
    parent: dict[int, int] = {j: j for j in active}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    row_owner: dict[Monomial, int] = {}
    for j in active:
        for m in images[j]:
            owner = row_owner.get(m)
            if owner is None:
                row_owner[m] = j
            else:
                union(owner, j)

    groups_: dict[int, list[int]] = {}
    for j in active:
        groups_.setdefault(find(j), []).append(j)

    vectors: list[dict[int, GaussianRational]] = []
    for root in sorted(groups_):
        cols = sorted(groups_[root])
        row_keys = sorted(
            {m for j in cols for m in images[j]}, key=lambda m: m.order_key()
        )
        if not row_keys:
            vectors.extend({j: ONE} for j in cols)
            continue
        rows = []
        for m in row_keys:
            rows.append([images[j].get(m, ZERO) for j in cols])
        for vec in kernel_basis(ExactMatrix(rows)):
            vectors.append({cols[t]: x for t, x in enumerate(vec) if not x.is_zero()})
    return vectors


def _kernel_general(
    element: LieElement,
    vecs: list[dict[int, GaussianRational]],
    monos: list[Monomial],
) -> list[dict[int, GaussianRational]]:
    """Kernel of one generator restricted to the span of combined vectors."""
    n = element.n
    image_cache: dict[int, dict[Monomial, GaussianRational]] = {}
    columns = []
    for vec in vecs:
        img: dict[Monomial, GaussianRational] = {}
        for idx, c in vec.items():
            cell = image_cache.get(idx)
            if cell is None:
                cell = _monomial_image(element, monos[idx], n)
                image_cache[idx] = cell
            for m, a in cell.items():
                s = img.get(m, ZERO) + a * c
                if s.is_zero():
                    img.pop(m, None)
                else:
                    img[m] = s
        columns.append(img)
    row_keys = sorted({m for img in columns for m in img}, key=lambda m: m.order_key())
    if not row_keys:
        return vecs
    rows = [[img.get(m, ZERO) for img in columns] for m in row_keys]
    combined: list[dict[int, GaussianRational]] = []
    for kv in kernel_basis(ExactMatrix(rows)):
        acc: dict[int, GaussianRational] = {}
        for t, weight in enumerate(kv):
            if weight.is_zero():
                continue
            for idx, c in vecs[t].items():
                s = acc.get(idx, ZERO) + c * weight
                if s.is_zero():
                    acc.pop(idx, None)
                else:
                    acc[idx] = s
        combined.append(acc)
    return combined


def invariant_basis(group: GroupSpec, k: int, l: int, cap: int | None = None) -> InvariantSpace:
    """Exact basis of the invariant polynomials of bidegree (k, l).

    Deterministic: the same group and bidegree always produce the same basis,
    normalized so each element has leading coefficient 1.
    """
    if k < 0 or l < 0:
        raise ValueError("bidegree must be non-negative")
    monos = bidegree_monomials(group.n, k, l)
    limit = cap if cap is not None else monomial_cap()
    if len(monos) > limit:
        raise MonomialCapExceeded(len(monos), limit, k, l, group.n)

    generators = sorted(lie_basis(group), key=lambda a: 0 if a.is_diagonal() else 1)
    active = list(range(len(monos)))
    vecs: list[dict[int, GaussianRational]] | None = None
    for element in generators:
        if vecs is None:
            if element.is_diagonal():
                active = [
                    j for j in active if _diagonal_weight(element, monos[j]).is_zero()
                ]
            else:
                vecs = _kernel_by_components(element, active, monos)
        else:
            vecs = _kernel_general(element, vecs, monos)
        if vecs is not None and not vecs:
            break
        if vecs is None and not active:
            break
    if vecs is None:
        vecs = [{j: ONE} for j in active]

    basis = []
    for vec in vecs:
        ordered = sorted(vec.items())
        lead = ordered[0][1]
        inv = None if lead == ONE else lead.inverse()
        terms = {
            monos[idx]: Coefficient(c * inv if inv else c) for idx, c in ordered
        }
        basis.append(Polynomial._raw(group.n, terms))
    return InvariantSpace(group, k, l, tuple(basis))


def claimed_family(form: FormId, k: int, l: int) -> list[Polynomial]:
    """The family's generating products restricted to bidegree (k, l), expanded."""
    if k < 0 or l < 0:
        raise ValueError("bidegree must be non-negative")
    n = form.n
    r2 = norm_squared(n)
    out: list[Polynomial] = []
    if form.tag == "prior-un":
        if k == l:
            out.append(r2**k)
    elif form.tag == "prior-u1xu":
        if k == l:
            z1sq = Polynomial.z(n, 1) * Polynomial.zb(n, 1)
            for p in range(k + 1):
                out.append(z1sq**p * r2 ** (k - p))
    elif form.tag == "a1":
        if k == l:
            s = dot_squares(3)
            sb = s.conjugate()
            for p in range(k // 2 + 1):
                out.append(s**p * sb**p * r2 ** (k - 2 * p))
    elif form.tag == "a2":
        for r in range(min(k, l) + 1):
            out.append(Polynomial.z(n, 1) ** (k - r) * Polynomial.zb(n, 1) ** (l - r) * r2**r)
    elif form.tag == "a3":
        for p in range(k + 1):
            q = k - p
            for r in range(l + 1):
                s = l - r
                if (p - r) * form.k1 + (q - s) * form.k2 == 0:
                    out.append(Polynomial.from_monomial(2, Monomial((p, q), (r, s), 0)))
    elif form.tag == "b3":
        s = dot_squares(3)
        sb = s.conjugate()
        for r in range(min(k, l) + 1):
            if (k - r) % 2 or (l - r) % 2:
                continue
            out.append(s ** ((k - r) // 2) * sb ** ((l - r) // 2) * r2**r)
    elif form.tag == "b1":
        if k == l:
            for a in _exponent_vectors(3, k):
                out.append(Polynomial.from_monomial(3, Monomial(a, a, 0)))
    elif form.tag == "b2":
        if k == l:
            zp = Polynomial.z(4, 1) * Polynomial.zb(4, 1) + Polynomial.z(4, 2) * Polynomial.zb(4, 2)
            zpp = Polynomial.z(4, 3) * Polynomial.zb(4, 3) + Polynomial.z(4, 4) * Polynomial.zb(4, 4)
            for p in range(k + 1):
                out.append(zp**p * zpp ** (k - p))
    return out


def _common_bidegree(polys: list[Polynomial]) -> tuple[int, int] | None:
    found: tuple[int, int] | None = None
    for p in polys:
        for bd in p.bidegrees():
            if found is None:
                found = bd
            elif bd != found:
                raise ValueError(f"bidegree mismatch: {found} vs {bd}")
    return found


def span_equal(first: list[Polynomial], second: list[Polynomial]) -> bool:
    """True when two lists of polynomials have identical exact spans."""
    ns = {p.n for p in first} | {p.n for p in second}
    if len(ns) > 1:
        raise ValueError("ambient dimension mismatch")
    bd_first = _common_bidegree(first)
    bd_second = _common_bidegree(second)
    if bd_first is not None and bd_second is not None and bd_first != bd_second:
        raise ValueError(f"bidegree mismatch: {bd_first} vs {bd_second}")
    monos = sorted(
        {m for p in first for m in p.terms} | {m for p in second for m in p.terms},
        key=lambda m: m.order_key(),
    )
    if not monos:
        return True
    index = {m: i for i, m in enumerate(monos)}

    def coords(polys):
        rows = []
        for p in polys:
            row = [ZERO] * len(monos)
            for mono, coeff in p.terms.items():
                if coeff.terms:
                    raise ValueError("span comparison needs scalar polynomials")
                row[index[mono]] = coeff.constant
            rows.append(row)
        return rows

    rows_first = coords(first)
    rows_second = coords(second)
    rank_first = rank(ExactMatrix(rows_first)) if rows_first else 0
    rank_second = rank(ExactMatrix(rows_second)) if rows_second else 0
    if rank_first != rank_second:
        return False
    if rank_first == 0:
        return True
    return rank(ExactMatrix(rows_first + rows_second)) == rank_first


def invariant_dim_count(group: GroupSpec, k: int, l: int) -> int:
    """Closed-form dimension count for the lattice and product-type groups."""
    if k < 0 or l < 0:
        raise ValueError("bidegree must be non-negative")
    kind = group.kind
    n = group.n
    if kind == "u1cubed":
        return comb(k + 2, 2) if k == l else 0
    if kind == "un":
        return 1 if k == l else 0
    if kind in ("u2xu2", "u1xu"):
        return k + 1 if k == l else 0
    if kind == "su":
        return min(k, l) + 1
    if kind == "h":
        if n == 2:
            count = 0
            for p in range(k + 1):
                q = k - p
                for r in range(l + 1):
                    s = l - r
                    if (p - r) * group.k1 + (q - s) * group.k2 == 0:
                        count += 1
            return count
        if group.k1 == 0:
            return min(k, l) + 1
        return k + 1 if k == l else 0
    raise ValueError(f"no closed-form invariant count for group kind {kind!r}")
