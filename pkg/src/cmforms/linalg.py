"""Exact dense linear algebra over the Gaussian rationals.

Row reduction is fraction-free in the Bareiss style: rows are first scaled to
Gaussian-integer entries, then every update step computes
``(pivot*a_ij - a_ic*a_rj) / previous_pivot`` with an exact integer division.
Pivots are chosen as the first row holding a nonzero entry in the leftmost
unfinished column, so results are reproducible.  Kernel vectors are
normalized to have first nonzero entry 1.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .gaussian import GaussianRational, ONE, ZERO, _build, gq


class ExactMatrix:
    """Dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(gq(x) for x in row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("matrix needs at least one row and one column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ValueError("ragged rows")
        self.rows = len(grid)
        self.cols = cols
        self.entries = grid

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.entries[i][j]

    def mul_vector(self, vector: Sequence[GaussianRational]) -> list[GaussianRational]:
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for row in self.entries:
            acc = ZERO
            for a, x in zip(row, vector):
                if a.is_zero() or x.is_zero():
                    continue
                acc = acc + a * x
            out.append(acc)
        return out

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


def _integer_rows(m: ExactMatrix) -> list[list[tuple[int, int]]]:
    """Scale each row by the lcm of its denominators; kernel is unchanged."""
    rows = []
    for row in m.entries:
        scale = 1
        for x in row:
            scale = scale * x.d // gcd(scale, x.d)
        rows.append([(x.a * (scale // x.d), x.b * (scale // x.d)) for x in row])
    return rows


def _gauss_div(ra: int, ri: int, pa: int, pb: int, nn: int) -> tuple[int, int]:
    """Exact division of the Gaussian integer ra+ri*i by pa+pb*i with norm nn."""
    if nn == 1:
        if pb == 0:
            return (ra * pa, ri * pa)  # pa is +-1
        return (ra * pa + ri * pb, ri * pa - ra * pb)
    qa, rema = divmod(ra * pa + ri * pb, nn)
    qi, remi = divmod(ri * pa - ra * pb, nn)
    if rema or remi:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return (qa, qi)


def _bareiss(rows: list[list[tuple[int, int]]], cols: int) -> list[tuple[int, int]]:
    """In-place fraction-free forward elimination; returns (row, col) pivots."""
    pivots: list[tuple[int, int]] = []
    nrows = len(rows)
    pa, pb = 1, 0  # previous pivot
    pr = 0
    for pc in range(cols):
        sel = -1
        for i in range(pr, nrows):
            if rows[i][pc] != (0, 0):
                sel = i
                break
        if sel < 0:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        top = rows[pr]
        va, vb = top[pc]
        nn = pa * pa + pb * pb
        for i in range(pr + 1, nrows):
            row = rows[i]
            ma, mb = row[pc]
            if ma == 0 and mb == 0:
                if (va, vb) != (pa, pb):
                    # Bareiss still rescales rows with a zero multiplier.
                    for j in range(pc + 1, cols):
                        xa, xb = row[j]
                        if xa or xb:
                            ra = xa * va - xb * vb
                            ri = xa * vb + xb * va
                            row[j] = _gauss_div(ra, ri, pa, pb, nn)
            else:
                for j in range(pc + 1, cols):
                    xa, xb = row[j]
                    ta, tb = top[j]
                    ra = xa * va - xb * vb - ma * ta + mb * tb
                    ri = xa * vb + xb * va - ma * tb - mb * ta
                    if ra or ri:
                        row[j] = _gauss_div(ra, ri, pa, pb, nn)
                    else:
                        row[j] = (0, 0)
                row[pc] = (0, 0)
        pivots.append((pr, pc))
        pa, pb = va, vb
        pr += 1
        if pr == nrows:
            break
    return pivots


def rank(m: ExactMatrix) -> int:
    rows = _integer_rows(m)
    return len(_bareiss(rows, m.cols))


def kernel_basis(m: ExactMatrix) -> list[tuple[GaussianRational, ...]]:
    """Exact basis of the right nullspace, one vector per free column.

    Vectors are normalized so that the first nonzero entry equals 1 and come
    out ordered by their free column.  Every returned vector is checked to be
    annihilated by the matrix.
    """
    rows = _integer_rows(m)
    pivots = _bareiss(rows, m.cols)
    pivot_cols = {pc for _, pc in pivots}
    gq_rows = {pr: [_build(a, b, 1) for a, b in rows[pr]] for pr, _ in pivots}

    vectors: list[tuple[GaussianRational, ...]] = []
    for free in range(m.cols):
        if free in pivot_cols:
            continue
        coords: list[GaussianRational] = [ZERO] * m.cols
        coords[free] = ONE
        for pr, pc in reversed(pivots):
            if pc > free:
                continue
            row = gq_rows[pr]
            acc = ZERO
            for j in range(pc + 1, m.cols):
                cj = coords[j]
                if cj.is_zero():
                    continue
                rj = row[j]
                if rj.is_zero():
                    continue
                acc = acc + rj * cj
            if not acc.is_zero():
                coords[pc] = -acc / row[pc]
        lead = next(x for x in coords if not x.is_zero())
        if lead != ONE:
            inv = lead.inverse()
            coords = [x * inv for x in coords]
        vec = tuple(coords)
        _verify_in_kernel(m, vec)
        vectors.append(vec)
    return vectors


def _verify_in_kernel(m: ExactMatrix, vector: tuple[GaussianRational, ...]) -> None:
    support = [j for j, x in enumerate(vector) if not x.is_zero()]
    for row in m.entries:
        acc = ZERO
        for j in support:
            a = row[j]
            if not a.is_zero():
                acc = acc + a * vector[j]
        if not acc.is_zero():
            raise ArithmeticError("internal error: computed kernel vector is not annihilated")


def matrix_from_polynomials(polys, monomials) -> ExactMatrix:
    """Coordinate matrix: one row per polynomial over the given monomial list.

    Polynomials must be scalar; monomials not listed must not occur.
    """
    index = {m: i for i, m in enumerate(monomials)}
    rows = []
    for p in polys:
        row = [ZERO] * len(monomials)
        for mono, coeff in p.terms.items():
            if coeff.terms:
                raise ValueError("coordinate matrices need scalar polynomials")
            row[index[mono]] = coeff.constant
        rows.append(row)
    return ExactMatrix(rows)
