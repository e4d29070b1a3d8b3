"""Trace identities and catalogued surface families in Chern-Moser normal form.

A truncated surface is  v = |z|^2 + body  where the body collects the terms
F_(k,l)(z, zb, u) with both z-degree and conjugate degree at least 2.  The
normal form imposes three trace conditions on the low bidegrees:

    tr F(2,2) = 0,    tr^2 F(2,3) = 0,    tr^3 F(3,3) = 0,

with tr the second-order operator sum_a d^2/dz_a dzb_a.  Surfaces with
scalar coefficients are checked directly; surfaces whose coefficients are
unknowns yield an exact linear system instead.

The module also emits the catalogued families of surfaces invariant under
each group in `groups`.  Every family is identified by a short tag:

    prior-un     sums of C_p(u) |z|^(2p), p >= 4
    prior-u1xu   sums of C_pq(u) |z1|^(2p) |z|^(2q)
    a3           C_pqrs(u) z1^p z2^q zb1^r zb2^s on the lattice
                 (p-r) k1 + (q-s) k2 = 0            (n = 2)
    a1           C_pq(u) |z1^2+z2^2+z3^2|^(2p) |z|^(2q)   (n = 3)
    a2           C_pqr(u) z1^p zb1^q |z|^(2r)
    b3           C_pqr(u) (z.z)^p (zb.zb)^q |z|^(2r)      (n = 3)
    b1           C_pqr(u) |z1|^(2p) |z2|^(2q) |z3|^(2r)   (n = 3)
    b2           C_pq(u) |z'|^(2p) |z''|^(2q), z'=(z1,z2), z''=(z3,z4)

Realness of a family is built in by tying each index tuple to its conjugate
partner: self-paired tuples get a single real unknown, the other tuples get a
shared real/imaginary pair so the two coefficients are complex conjugates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gaussian import GaussianRational, I, ONE, ZERO, gq
from .groups import GroupSpec
from .linalg import ExactMatrix, rank
from .poly import (
    Coefficient,
    Monomial,
    Polynomial,
    collect_constraints,
    dot_squares,
    norm_squared,
)

FORM_TAGS = ("prior-un", "prior-u1xu", "a3", "a1", "a2", "b3", "b1", "b2")

_FORM_FIXED_N = {"a3": 2, "a1": 3, "b3": 3, "b1": 3, "b2": 4}


def trace(p: Polynomial) -> Polynomial:
    """The trace operator sum_a d^2/dz_a dzb_a; lowers bidegree by (1, 1)."""
    out = Polynomial.zero(p.n)
    for alpha in range(1, p.n + 1):
        out = out + p.partial_z(alpha).partial_zb(alpha)
    return out


def trace_power(p: Polynomial, power: int) -> Polynomial:
    for _ in range(power):
        p = trace(p)
    return p


@dataclass(frozen=True)
class FormId:
    """Identifier of one catalogued surface family."""

    tag: str
    k1: int | None = None
    k2: int | None = None
    n: int = 0

    def __post_init__(self):
        if self.tag not in FORM_TAGS:
            raise ValueError(f"unknown form tag {self.tag!r}")
        fixed = _FORM_FIXED_N.get(self.tag)
        if fixed is not None:
            if self.n == 0:
                object.__setattr__(self, "n", fixed)
            elif self.n != fixed:
                raise ValueError(f"form {self.tag} lives in dimension {fixed}, not {self.n}")
        elif self.n == 0:
            raise ValueError(f"form {self.tag} needs an explicit ambient dimension")
        minimum = 1 if self.tag == "prior-un" else 2
        if self.n < minimum:
            raise ValueError(f"form {self.tag} needs n >= {minimum}")
        if self.tag == "a3":
            if self.k1 is None or self.k2 is None:
                raise ValueError("form a3 needs the lattice exponents k1, k2")
            if self.k1 == 0:
                raise ValueError("form a3 needs k1 nonzero")
            if self.k2 <= 0:
                raise ValueError("form a3 needs k2 > 0")
            if gcd(self.k1, self.k2) != 1:
                raise ValueError("form a3 needs coprime exponents")
        elif self.k1 is not None or self.k2 is not None:
            raise ValueError(f"form {self.tag} takes no lattice exponents")

    def __str__(self) -> str:
        return format_form(self)


def parse_form(text: str, n: int | None = None) -> FormId:
    """Parse a form specifier such as "a1", "a3:1,2" or "a2" (with explicit n)."""
    head, _, params = text.strip().partition(":")
    if head not in FORM_TAGS:
        raise ValueError(f"unknown form specifier {text!r}")
    k1 = k2 = None
    if head == "a3":
        if not params:
            raise ValueError("form a3 is written a3:<k1>,<k2>")
        k1s, _, k2s = params.partition(",")
        try:
            k1, k2 = int(k1s), int(k2s)
        except ValueError:
            raise ValueError(f"bad lattice exponents in {text!r}") from None
    elif params:
        raise ValueError(f"form {head} takes no parameters")
    return FormId(head, k1, k2, n or 0)


def format_form(form: FormId) -> str:
    if form.tag == "a3":
        return f"a3:{form.k1},{form.k2}"
    return form.tag


def form_group(form: FormId) -> GroupSpec:
    """The subgroup of U_n under which the family's terms are invariant."""
    if form.tag == "prior-un":
        return GroupSpec("un", form.n)
    if form.tag == "prior-u1xu":
        return GroupSpec("u1xu", form.n)
    if form.tag == "a3":
        return GroupSpec("h", 2, form.k1, form.k2)
    if form.tag == "a1":
        return GroupSpec("circle-so3")
    if form.tag == "a2":
        return GroupSpec("h", form.n, 0, 1)
    if form.tag == "b3":
        return GroupSpec("so3")
    if form.tag == "b1":
        return GroupSpec("u1cubed")
    return GroupSpec("u2xu2")


@dataclass(frozen=True)
class NormalFormSurface:
    """Truncated defining equation v = |z|^2 + body."""

    n: int
    max_weight: int
    body: Polynomial

    def __post_init__(self):
        if self.body.n != self.n:
            raise ValueError("body dimension does not match the surface")
        for mono in self.body.terms:
            k, l = mono.bidegree
            if k < 2 or l < 2:
                raise ValueError(
                    f"body term of bidegree ({k},{l}): both degrees must be at least 2"
                )
            if mono.weight > self.max_weight:
                raise ValueError(
                    f"body term of weight {mono.weight} exceeds the truncation {self.max_weight}"
                )

    @classmethod
    def empty(cls, n: int, max_weight: int) -> "NormalFormSurface":
        return cls(n, max_weight, Polynomial.zero(n))


def reality_check(surface: NormalFormSurface) -> bool:
    """True when the body is fixed by conjugation, i.e. v - |z|^2 is real."""
    return surface.body.conjugate() == surface.body


@dataclass(frozen=True)
class IdentityResidual:
    identity: str
    u_degree: int
    residual: Polynomial

    @property
    def passed(self) -> bool:
        return self.residual.is_zero()


@dataclass(frozen=True)
class NormalFormReport:
    identities: tuple[IdentityResidual, ...]
    real: bool
    degrees_ok: bool
    weight_ok: bool

    @property
    def passed(self) -> bool:
        return (
            self.real
            and self.degrees_ok
            and self.weight_ok
            and all(row.passed for row in self.identities)
        )


_IDENTITIES = (
    ("tr F(2,2)", 2, 2, 1),
    ("tr^2 F(2,3)", 2, 3, 2),
    ("tr^2 F(3,2)", 3, 2, 2),
    ("tr^3 F(3,3)", 3, 3, 3),
)


def check_normal_form(surface: NormalFormSurface) -> NormalFormReport:
    """Evaluate the trace identities per u-degree on a scalar surface."""
    body = surface.body
    if body.has_unknowns():
        raise ValueError("surface has unknown coefficients; use nf_constraints instead")
    rows: list[IdentityResidual] = []
    for label, k, l, power in _IDENTITIES:
        component = body.bigraded_component(k, l)
        residual = trace_power(component, power)
        for t in component.u_degrees():
            rows.append(IdentityResidual(label, t, residual.u_component(t)))
    degrees_ok = all(m.zdegree >= 2 and m.zbdegree >= 2 for m in body.terms)
    weight_ok = all(m.weight <= surface.max_weight for m in body.terms)
    return NormalFormReport(tuple(rows), reality_check(surface), degrees_ok, weight_ok)


@dataclass(frozen=True)
class Constraint:
    """One linear equation "coefficient = 0" extracted from a residual."""

    identity: str
    u_degree: int
    monomial: Monomial
    equation: Coefficient


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    unknowns: tuple[str, ...]
    constraints: tuple[Constraint, ...]

    def is_empty(self) -> bool:
        return not self.constraints

    def reduced_equations(self) -> list[Coefficient]:
        """Distinct equations up to scaling, in order of first occurrence."""
        seen = set()
        out = []
        for c in self.constraints:
            key = _proportionality_key(c.equation)
            if key not in seen:
                seen.add(key)
                out.append(c.equation)
        return out

    def solution_space_dim(self) -> int | None:
        """Dimension of the affine solution set over the real unknowns.

        Complex equations split into real and imaginary parts.  Returns None
        when the system is inconsistent.
        """
        names = list(self.unknowns)
        if not names:
            if any(not c.equation.constant.is_zero() for c in self.constraints):
                return None
            return 0
        index = {name: j for j, name in enumerate(names)}
        hom_rows: list[list[GaussianRational]] = []
        aug_rows: list[list[GaussianRational]] = []
        for c in self.constraints:
            row_re = [ZERO] * len(names)
            row_im = [ZERO] * len(names)
            for name, scale in c.equation.terms.items():
                row_re[index[name]] = gq(scale.re)
                row_im[index[name]] = gq(scale.im)
            const = c.equation.constant
            hom_rows.extend([row_re, row_im])
            aug_rows.append(row_re + [gq(const.re)])
            aug_rows.append(row_im + [gq(const.im)])
        if not hom_rows:
            return len(names)
        r = rank(ExactMatrix(hom_rows))
        if rank(ExactMatrix(aug_rows)) != r:
            return None
        return len(names) - r


def _proportionality_key(equation: Coefficient):
    lead = equation.constant
    if lead.is_zero():
        for name in sorted(equation.terms):
            lead = equation.terms[name]
            break
    if lead.is_zero():
        return ()
    inv = lead.inverse()
    return (
        equation.constant * inv,
        tuple(sorted((name, c * inv) for name, c in equation.terms.items())),
    )


def nf_constraints(surface: NormalFormSurface) -> ConstraintSystem:
    """Apply the trace identities to a surface with unknown coefficients.

    Produces one linear equation per monomial of each residual, per u-degree.
    The solution set characterizes the admissible coefficient values.
    """
    body = surface.body
    constraints: list[Constraint] = []
    for label, k, l, power in _IDENTITIES:
        residual = trace_power(body.bigraded_component(k, l), power)
        for mono, equation in residual.items_sorted():
            constraints.append(Constraint(label, mono.uexp, mono, equation))
    return ConstraintSystem(surface.n, tuple(body.unknown_names()), tuple(constraints))


# --------------------------------------------------------------- form emission


def _coefficient_name(indices: tuple[int, ...], t: int) -> str:
    return f"C[{','.join(map(str, indices))};{t}]"


def _family_terms(form: FormId, max_weight: int):
    """Yield (index tuple, conjugate partner, generator polynomial, weight).

    The generator polynomial is the expanded product attached to the index
    tuple; its weight excludes the u power.
    """
    n = form.n
    r2 = norm_squared(n)
    if form.tag == "prior-un":
        for p in range(4, max_weight // 2 + 1):
            yield (p,), (p,), r2**p, 2 * p
    elif form.tag == "prior-u1xu":
        z1sq = Polynomial.z(n, 1) * Polynomial.zb(n, 1)
        for p in range(0, max_weight // 2 + 1):
            for q in range(0, max_weight // 2 - p + 1):
                if p + q < 2:
                    continue
                yield (p, q), (p, q), z1sq**p * r2**q, 2 * (p + q)
    elif form.tag == "a1":
        s = dot_squares(3)
        sb = s.conjugate()
        for p in range(0, max_weight // 4 + 1):
            for q in range(0, (max_weight - 4 * p) // 2 + 1):
                if 2 * p + q < 2:
                    continue
                yield (p, q), (p, q), s**p * sb**p * r2**q, 2 * (2 * p + q)
    elif form.tag == "a2":
        for r in range(0, max_weight // 2 + 1):
            for p in range(0, max_weight - 2 * r + 1):
                for q in range(0, max_weight - 2 * r - p + 1):
                    if p + r < 2 or q + r < 2:
                        continue
                    gen = Polynomial.z(n, 1) ** p * Polynomial.zb(n, 1) ** q * r2**r
                    yield (p, q, r), (q, p, r), gen, p + q + 2 * r
    elif form.tag == "a3":
        k1, k2 = form.k1, form.k2
        for k in range(2, max_weight - 1):
            for l in range(2, max_weight - k + 1):
                for p in range(k + 1):
                    q = k - p
                    for r in range(l + 1):
                        s = l - r
                        if (p - r) * k1 + (q - s) * k2 != 0:
                            continue
                        mono = Monomial((p, q), (r, s), 0)
                        yield (p, q, r, s), (r, s, p, q), Polynomial.from_monomial(2, mono), k + l
    elif form.tag == "b3":
        s = dot_squares(3)
        sb = s.conjugate()
        for p in range(0, max_weight // 2 + 1):
            for q in range(0, (max_weight - 2 * p) // 2 + 1):
                for r in range(0, (max_weight - 2 * p - 2 * q) // 2 + 1):
                    if 2 * p + r < 2 or 2 * q + r < 2:
                        continue
                    yield (p, q, r), (q, p, r), s**p * sb**q * r2**r, 2 * (p + q + r)
    elif form.tag == "b1":
        for p in range(0, max_weight // 2 + 1):
            for q in range(0, max_weight // 2 - p + 1):
                for r in range(0, max_weight // 2 - p - q + 1):
                    if p + q + r < 2:
                        continue
                    mono = Monomial((p, q, r), (p, q, r), 0)
                    yield (p, q, r), (p, q, r), Polynomial.from_monomial(3, mono), 2 * (p + q + r)
    elif form.tag == "b2":
        zp = Polynomial.z(4, 1) * Polynomial.zb(4, 1) + Polynomial.z(4, 2) * Polynomial.zb(4, 2)
        zpp = Polynomial.z(4, 3) * Polynomial.zb(4, 3) + Polynomial.z(4, 4) * Polynomial.zb(4, 4)
        for p in range(0, max_weight // 2 + 1):
            for q in range(0, max_weight // 2 - p + 1):
                if p + q < 2:
                    continue
                yield (p, q), (p, q), zp**p * zpp**q, 2 * (p + q)


def emit_form(
    form: FormId,
    max_weight: int,
    u_degree_cap: int,
    coeffs: dict[tuple[int, ...], object] | None = None,
) -> NormalFormSurface:
    """Build the truncated surface of a catalogued family.

    With ``coeffs=None`` every admissible index tuple gets a fresh unknown
    (a single real unknown for self-conjugate tuples, a real/imaginary pair
    otherwise).  Otherwise ``coeffs`` assigns exact scalar values, keyed by
    the index tuple extended with the u power; conjugate partners default to
    the conjugated value so the surface stays real.
    """
    if max_weight < 0 or u_degree_cap < 0:
        raise ValueError("truncation bounds must be non-negative")
    n = form.n
    body = Polynomial.zero(n)
    assigned = None
    if coeffs is not None:
        assigned = {tuple(key): gq(value) for key, value in coeffs.items()}
    for indices, partner, gen, weight in _family_terms(form, max_weight):
        for t in range(0, min(u_degree_cap, (max_weight - weight) // 2) + 1):
            upoly = Polynomial.from_monomial(n, Monomial((0,) * n, (0,) * n, t))
            if assigned is not None:
                value = assigned.get(indices + (t,))
                partner_value = assigned.get(partner + (t,))
                if value is None and partner_value is not None:
                    value = partner_value.conjugate()
                elif value is not None and partner_value is not None:
                    if partner_value != value.conjugate():
                        raise ValueError(
                            f"assignment for {indices}+u^{t} conflicts with its conjugate partner"
                        )
                if value is None or value.is_zero():
                    continue
                if indices == partner and not value.is_real():
                    raise ValueError(f"self-conjugate tuple {indices} needs a real value")
                body = body + gen * upoly * value
            else:
                if indices == partner:
                    coeff = Coefficient.unknown(_coefficient_name(indices, t))
                elif indices < partner:
                    base = _coefficient_name(indices, t)
                    coeff = Coefficient(ZERO, {base + ".re": ONE, base + ".im": I})
                else:
                    base = _coefficient_name(partner, t)
                    coeff = Coefficient(ZERO, {base + ".re": ONE, base + ".im": -I})
                body = body + gen * upoly * coeff
    return NormalFormSurface(n, max_weight, body)
