"""Cycle indices of GL(n,q), A(n,q) and P(n,q) as truncated series in u.

The coefficient of u^n in every proportion series is the exact probability
that a uniform element of the dimension-n group has the property.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .exact import (
    DEFAULT_ORDER,
    QContext,
    Series,
    affine_order,
    as_fraction,
    gl_order,
    partial_product,
    tail_bound_terms,
)
from .measures import (
    MeasureParams,
    PolyDescriptor,
    RationalFormData,
    class_size_factor,
)
from .partitions import Partition, enumerate_partitions, iter_partitions

PartitionMarker = Callable[[Partition], object]


class GroupKind(enum.Enum):
    GL = "GL"
    AFFINE = "A"
    PARABOLIC = "P"

    @classmethod
    def parse(cls, text: str) -> GroupKind:
        key = text.strip().upper()
        aliases = {"GL": cls.GL, "A": cls.AFFINE, "AFFINE": cls.AFFINE, "P": cls.PARABOLIC, "PARABOLIC": cls.PARABOLIC}
        if key not in aliases:
            raise ValueError(f"unknown group kind {text!r}")
        return aliases[key]

    def order(self, n: int, q: int) -> int:
        if self is GroupKind.GL:
            return gl_order(n, q)
        if self is GroupKind.AFFINE:
            return affine_order(n, q)
        return (q - 1) * affine_order(n, q)


# irreducible polynomial counts ---------------------------------------------


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def count_irreducibles(ctx: QContext, d: int) -> int:
    """N(d,q): monic irreducibles of degree d over F_q (necklace count)."""
    if d < 1:
        raise ValueError("degree must be positive")
    q = ctx.qi
    total = sum(_mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0)
    return total // d


@dataclass(frozen=True)
class IrreducibleCensus:
    """N(d,q) and N'(d,q) for d = 1..max_degree."""

    q: int
    counts: tuple[int, ...]

    @classmethod
    def build(cls, ctx: QContext, max_degree: int) -> IrreducibleCensus:
        return cls(ctx.qi, tuple(count_irreducibles(ctx, d) for d in range(1, max_degree + 1)))

    def N(self, d: int) -> int:
        return self.counts[d - 1]

    def N_prime(self, d: int) -> int:
        return self.N(d) - 2 if d == 1 else self.N(d)

    def generic_count(self, kind: GroupKind, d: int) -> int:
        """Number of polynomials of degree d that enter a proportion product generically."""
        if d == 1:
            return self.q - 1 if kind is GroupKind.GL else self.q - 2
        return self.N(d)


# closed-form proportion series ---------------------------------------------


def _sep_factor(ctx: QContext, d: int, order: int) -> Series:
    return Series.one(order) + Series.monomial(1 / (ctx.power(d) - 1), d, order)


def _cyc_factor(ctx: QContext, d: int, order: int) -> Series:
    Q = ctx.power(d)
    geo = Series.geometric(1 / Q, order // d).dilate(d, order)
    return Series.one(order) + Series.monomial(1 / (Q - 1), d, order) * geo


def _ss_factor(ctx: QContext, d: int, order: int) -> Series:
    Qd = ctx.extension(d)
    cs = [1 / (Qd.power(k * k) * Qd.inv_poch(k)) for k in range(order // d + 1)]
    return Series(cs, order // d).dilate(d, order)


def _ss_head(ctx: QContext, order: int) -> Series:
    return Series([1 / (ctx.power(k * k + k) * ctx.inv_poch(k)) for k in range(order + 1)], order)


def _product_over_degrees(kind: GroupKind, ctx: QContext, order: int, factor) -> Series:
    census = IrreducibleCensus.build(ctx, max(order, 1))
    out = Series.one(order)
    for d in range(1, order + 1):
        e = census.generic_count(kind, d)
        if e:
            out = out * factor(ctx, d, order).power(e)
    return out


@functools.lru_cache(maxsize=None)
def separable_series(kind: GroupKind, ctx: QContext, order: int = DEFAULT_ORDER) -> Series:
    """sum_n s(n,q) u^n; the z-1 slot of A and P contributes only (1)."""
    return _product_over_degrees(kind, ctx, order, _sep_factor)


@functools.lru_cache(maxsize=None)
def cyclic_series(kind: GroupKind, ctx: QContext, order: int = DEFAULT_ORDER) -> Series:
    out = _product_over_degrees(kind, ctx, order, _cyc_factor)
    if kind is not GroupKind.GL:
        out = out * Series.geometric(1 / ctx.q, order)
    return out


@functools.lru_cache(maxsize=None)
def semisimple_series(kind: GroupKind, ctx: QContext, order: int = DEFAULT_ORDER) -> Series:
    out = _product_over_degrees(kind, ctx, order, _ss_factor)
    if kind is not GroupKind.GL:
        out = out * _ss_head(ctx, order)
    return out


# general cycle index with markers -----------------------------------------


@dataclass
class Marker:
    """Weights x_{phi,lam} for the cycle index.

    ``default`` applies to every slot not listed (``None`` means weight 1).
    ``linear`` maps a root a in F_q^* to the marker of z - a; ``higher``
    lists markers for distinct irreducibles of degree >= 2.
    """

    default: Optional[PartitionMarker] = None
    linear: dict[int, PartitionMarker] = field(default_factory=dict)
    higher: list[tuple[int, PartitionMarker]] = field(default_factory=list)

    @classmethod
    def on_z_minus_one(cls, fn: PartitionMarker, default: Optional[PartitionMarker] = None) -> Marker:
        return cls(default=default, linear={1: fn})


def _weight(fn: Optional[PartitionMarker], lam: Partition) -> Fraction:
    return Fraction(1) if fn is None else as_fraction(fn(lam))


def m_factor(ctx: QContext, d: int, order: int, fn: Optional[PartitionMarker] = None) -> Series:
    """sum_lam x(lam) u^{d|lam|} / c_GL(lam; q^d): one generic polynomial of degree d."""
    if fn is None:
        return _m_factor_plain(ctx, d, order)
    cs = [Fraction(0)] * (order + 1)
    for s in range(order // d + 1):
        for lam in iter_partitions(s):
            w = _weight(fn, lam)
            if w:
                cs[s * d] += w / class_size_factor(ctx, d, lam)
    return Series(cs, order)


@functools.lru_cache(maxsize=None)
def _m_factor_plain(ctx: QContext, d: int, order: int) -> Series:
    cs = [Fraction(0)] * (order + 1)
    for s in range(order // d + 1):
        cs[s * d] = sum((1 / class_size_factor(ctx, d, lam) for lam in iter_partitions(s)), Fraction(0))
    return Series(cs, order)


def n_factor(ctx: QContext, order: int, fn: Optional[PartitionMarker] = None) -> Series:
    """sum_{lam nonempty} x(lam) u^{|lam|-1} (q^{lam'_1} - 1) / c_GL(lam; q): the z-1 slot of A."""
    if fn is None:
        return _n_factor_plain(ctx, order)
    cs = [Fraction(0)] * (order + 1)
    for s in range(1, order + 2):
        for lam in iter_partitions(s):
            w = _weight(fn, lam)
            if w:
                cs[s - 1] += w * (ctx.power(lam.column(1)) - 1) / class_size_factor(ctx, 1, lam)
    return Series(cs, order)


@functools.lru_cache(maxsize=None)
def _n_factor_plain(ctx: QContext, order: int) -> Series:
    return n_factor(ctx, order, lambda lam: 1)


def joint_coefficient(kind: GroupKind, ctx: QContext, order: int, marker: Marker) -> Series:
    """The cycle index with the given markers; u^n carries the group-(n) average."""
    q = ctx.qi
    census = IrreducibleCensus.build(ctx, max(order, 1))
    if any(not 1 <= a <= q - 1 for a in marker.linear):
        raise ValueError("linear markers must be keyed by a root in F_q^*")
    per_degree: dict[int, list[PartitionMarker]] = {}
    for d, fn in marker.higher:
        if d < 2:
            raise ValueError("use `linear` for degree-1 markers")
        per_degree.setdefault(d, []).append(fn)
    for d, fns in per_degree.items():
        if len(fns) > census.N(d):
            raise ValueError(f"only {census.N(d)} irreducibles of degree {d} exist")

    if marker.default is not None and _weight(marker.default, Partition()) != 1:
        raise ValueError("the default marker must weight the empty partition by 1")

    def m(d, fn):
        return m_factor(ctx, d, order, fn if fn is not None else marker.default)

    higher = Series.one(order)
    for d in range(2, order + 1):
        fns = per_degree.get(d, [])
        for fn in fns:
            higher = higher * m(d, fn)
        rest = census.N(d) - len(fns)
        if rest:
            higher = higher * m(d, None).power(rest)
    for d, fns in per_degree.items():
        if d > order:
            for fn in fns:
                higher = higher * _weight(fn, Partition())

    roots = range(1, q)
    marked = {a: marker.linear[a] for a in roots if a in marker.linear}
    unmarked = (q - 1) - len(marked)
    if kind is GroupKind.GL:
        out = higher
        for fn in marked.values():
            out = out * m(1, fn)
        return out * m(1, None).power(unmarked) if unmarked else out

    def nf(fn):
        return n_factor(ctx, order, fn if fn is not None else marker.default)

    if kind is GroupKind.AFFINE:
        out = higher * nf(marked.get(1))
        others = [fn for a, fn in marked.items() if a != 1]
        for fn in others:
            out = out * m(1, fn)
        rest = (q - 2) - len(others)
        return out * m(1, None).power(rest) if rest else out

    # parabolic: the distinguished row sits on z - a for some a in F_q^*
    total = Series.zero(order)
    marked_m = {a: m(1, fn) for a, fn in marked.items()}
    plain_m = m(1, None)
    for a, fn in marked.items():
        term = nf(fn) / (q - 1)
        for b, s in marked_m.items():
            if b != a:
                term = term * s
        if unmarked:
            term = term * plain_m.power(unmarked)
        total = total + term
    if unmarked:
        term = nf(None) * Fraction(unmarked, q - 1)
        for s in marked_m.values():
            term = term * s
        if unmarked > 1:
            term = term * plain_m.power(unmarked - 1)
        total = total + term
    return total * higher


def enumerate_form_data(dim: int, ctx: QContext) -> Iterator[RationalFormData]:
    """Every GL(dim,q) class, with irreducibles named by degree and index.

    Linear factors are labelled ``z-a``; higher-degree ones ``d<deg>#<j>``.
    """
    q = ctx.qi
    slots: list[PolyDescriptor] = [PolyDescriptor.linear(a) for a in range(1, q)]
    for d in range(2, dim + 1):
        slots.extend(PolyDescriptor(d, f"d{d}#{j}") for j in range(count_irreducibles(ctx, d)))

    def rec(i: int, remaining: int, acc: list):
        if remaining == 0:
            yield RationalFormData(tuple(acc))
            return
        for j in range(i, len(slots)):
            phi = slots[j]
            for s in range(1, remaining // phi.degree + 1):
                for lam in enumerate_partitions(s):
                    acc.append((phi, lam))
                    yield from rec(j + 1, remaining - s * phi.degree, acc)
                    acc.pop()

    yield from rec(0, dim, [])


# fixed space, restricted mass, unipotents -----------------------------------


def _affine_order_q(n: int, ctx: QContext) -> Fraction:
    if n < 0:
        return Fraction(0)
    out = ctx.power(n)
    for i in range(n):
        out *= ctx.power(n) - ctx.power(i)
    return out


def fixed_space_prob(n: int, k: int, ctx: QContext) -> Fraction:
    """Chance that a uniform element of A(n,q) fixes a k-dimensional space."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must lie in [1, {n + 1}]")
    total = Fraction(0)
    denom = Fraction(1)
    for i in range(n - k + 2):
        if i:
            denom *= ctx.power(i) - 1
        total += Fraction((-1) ** i) / (ctx.power(k * i) * denom)
    return total / _affine_order_q(k - 1, ctx)


def fixed_space_limit(k: int, ctx: QContext, eps=Fraction(1, 10**30)) -> Fraction:
    """n -> infinity limit of fixed_space_prob, via a tail-bounded product."""
    if k < 1:
        raise ValueError("k must be positive")
    head = ctx.power(-(k * k - k)) / (ctx.inv_poch(k - 1) ** 2 * (1 - 1 / ctx.power(k)))
    R = tail_bound_terms(ctx, eps / max(head, 1))
    return partial_product(ctx, 1, R) * head


def restricted_mass_weight(k: int, p: MeasureParams) -> Fraction:
    """sum over lam'_1 = k of N_{u,q}(lam), divided by prod_{r>=1}(1 - u/q^r)."""
    if k < 1:
        raise ValueError("k must be positive")
    return p.u ** (k - 1) / (_affine_order_q(k - 1, p.ctx) * p.ctx.poch(p.u, k))


def restricted_mass(k: int, p: MeasureParams) -> Fraction:
    return p.prefactor * restricted_mass_weight(k, p)


def unipotent_rank_count(n: int, k: int, ctx: QContext):
    """Unipotent elements of A(n,q) whose z-1 partition has k parts (fixed space of dimension k)."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must lie in [1, {n + 1}]")
    num = Fraction(1)
    for i in range(k, n + 1):
        num *= 1 - 1 / ctx.power(i)
    den = ctx.power(n - k + 1) * ctx.inv_poch(n - k + 1)
    val = _affine_order_q(n, ctx) / _affine_order_q(k - 1, ctx) * num / den
    return val.numerator if val.denominator == 1 else val


# limits and convergence bounds ---------------------------------------------


def limit_separable(kind: GroupKind, ctx: QContext, eps=None) -> Fraction:
    q = ctx.q
    if kind is GroupKind.GL:
        return 1 - 1 / q
    return (1 - 1 / q) / (1 + 1 / (q - 1))


def limit_cyclic(kind: GroupKind, ctx: QContext, eps=None) -> Fraction:
    q = ctx.q
    gl = (1 - 1 / q**5) / (1 + 1 / q**3)
    if kind is GroupKind.GL:
        return gl
    return (1 - 1 / q) / (1 - 1 / q + 1 / q**2) * gl


def _mod5(r: int, residues) -> bool:
    return r % 5 in residues


def _ss_gl_product(ctx: QContext, R: int) -> Fraction:
    out = Fraction(1)
    for r in range(2, R + 1):
        if _mod5(r, (0, 2, 3)):
            out *= (1 - 1 / ctx.power(r - 1)) / (1 - 1 / ctx.power(r))
    return out


def _ss_affine_product(ctx: QContext, R: int) -> Fraction:
    num, den = Fraction(1), Fraction(1)
    for r in range(1, R + 1):
        if _mod5(r, (0, 1, 4)):
            num *= 1 - 1 / ctx.power(r)
        if _mod5(r, (0, 2, 3)):
            num *= 1 - 1 / ctx.power(r - 1)
            den *= (1 - 1 / ctx.power(r)) ** 2
    return num / den


def _tail_slack(ctx: QContext, R: int) -> Fraction:
    # at most four factors (1 - x)^{+-1} per r beyond R, each with x <= q^{-(r-1)}
    S = 4 / (ctx.power(R - 1) * (ctx.q - 1))
    return S / (1 - S)


def _bounded(ctx: QContext, eps, fn) -> tuple[Fraction, Fraction]:
    eps = as_fraction(eps)
    R = 4
    while True:
        val = fn(ctx, R)
        slack = _tail_slack(ctx, R)
        if slack < Fraction(1, 2) and val * slack < eps:
            return val, val * slack
        R += 4


def semisimple_limit_bounds(kind: GroupKind, ctx: QContext, eps=Fraction(1, 10**20)) -> tuple[Fraction, Fraction]:
    """(value, error bound) for ss(infinity, q) from the Rogers-Ramanujan product forms."""
    if kind is GroupKind.GL:
        return _bounded(ctx, eps, _ss_gl_product)
    return _bounded(ctx, eps, _ss_affine_product)


def limit_semisimple(kind: GroupKind, ctx: QContext, eps=Fraction(1, 10**20)) -> Fraction:
    return semisimple_limit_bounds(kind, ctx, eps)[0]


def rr_sum(ctx: QContext, shift: int, eps) -> tuple[Fraction, Fraction]:
    """sum_k q^{-(k^2 + shift*k)} / (1/q)_k with a rigorous tail bound."""
    eps = as_fraction(eps)
    total = Fraction(0)
    k = 0
    while True:
        term = 1 / (ctx.power(k * k + shift * k) * ctx.inv_poch(k))
        total += term
        nxt = 1 / (ctx.power((k + 1) ** 2 + shift * (k + 1)) * ctx.inv_poch(k + 1))
        # successive ratios drop below 1/4 once k >= 1, so the tail is < 4/3 of the next term
        if k >= 1 and Fraction(4, 3) * nxt < eps:
            return total, Fraction(4, 3) * nxt
        k += 1


def semisimple_limit_ratio_bounds(ctx: QContext, eps=Fraction(1, 10**20)) -> tuple[Fraction, Fraction]:
    """ss_A(infinity) as (sum ratio) * ss_GL(infinity), with a propagated error bound."""
    eps = as_fraction(eps)
    s2, e2 = rr_sum(ctx, 1, eps / 100)
    s1, e1 = rr_sum(ctx, 0, eps / 100)
    gl, egl = semisimple_limit_bounds(GroupKind.GL, ctx, eps / 100)
    ratio = s2 / s1
    hi = (s2 + e2) / s1 * (gl + egl)
    lo = s2 / (s1 + e1) * (gl - egl)
    val = ratio * gl
    return val, max(hi - val, val - lo)


def bound_cyclic(n: int, ctx: QContext) -> Fraction:
    """Upper bound on |c_A(n,q) - c_A(infinity,q)|."""
    q = ctx.q
    return 1 / (q ** (n + 1) * (1 - 1 / q))


def k_plus(ctx: QContext, k=1, c=Fraction(3, 2)) -> Fraction:
    q = ctx.q
    k = as_fraction(k)
    c = as_fraction(c)
    return k * c / (c - 1) * (1 + (q - 2) / c**2) * (c / (q - c))


def bound_separable(n: int, ctx: QContext, k=1, c=Fraction(3, 2)) -> Fraction:
    """Upper bound on |s_A(n,q) - s_A(infinity,q)|; ``k`` is the free constant of K+."""
    q = ctx.q
    c = as_fraction(c)
    K = k_plus(ctx, k, c)
    if q == 2:
        return 2 * K * (c / q) ** (n + 1) / (1 - (c / q) ** 2)
    if q - 1 <= c:
        raise ValueError("the q > 2 bound needs q - 1 > c")
    r = c / (q - 1)
    return 2 * K * c * r**n / ((c - 1) * (1 - r)) + 1 / ((1 - 1 / (q - 1)) * (q - 1) ** (n + 1))
