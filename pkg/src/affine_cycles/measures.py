"""The partition measures M_{u,q} and N_{u,q}, GL class-size factors and counts.

Everything is exact except the infinite prefactor prod_{r>=1}(1 - u/q^r),
which is evaluated once per :class:`MeasureParams` to a 1e-30 guard (it
cancels from every ratio), or carried as a series in ``*_series`` helpers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import (
    DEFAULT_ORDER,
    QContext,
    Series,
    affine_order,
    as_fraction,
    euler_product_series,
    gl_order,
    numeric_tail_product,
    parabolic_order,
    qcontext,
    tail_product_bounds,
)
from .partitions import Partition, n_stat

PREFACTOR_EPS = Fraction(1, 10**30)


@dataclass(frozen=True)
class MeasureParams:
    u: Fraction
    ctx: QContext
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        u = as_fraction(self.u)
        object.__setattr__(self, "u", u)
        if not 0 < u <= 1:
            raise ValueError(f"u must lie in (0, 1], got {u}")

    @classmethod
    def of(cls, u, q) -> MeasureParams:
        return cls(as_fraction(u), qcontext(as_fraction(q)))

    @property
    def q(self) -> Fraction:
        return self.ctx.q

    @property
    def prefactor(self) -> Fraction:
        """prod_{r>=1} (1 - u/q^r) to within PREFACTOR_EPS."""
        val = self._cache.get("prefactor")
        if val is None:
            val = numeric_tail_product(self.ctx, 1, PREFACTOR_EPS, self.u)
            self._cache["prefactor"] = val
        return val

    def prefactor_bounds(self, start: int, level: int) -> tuple[Fraction, Fraction]:
        """Rigorous (lo, hi) for prod_{r>=start}(1 - u/q^r); tighter as ``level`` grows."""
        key = ("bounds", start, level)
        val = self._cache.get(key)
        if val is None:
            val = tail_product_bounds(self.ctx, start, start + 8 * (level + 1), self.u)
            self._cache[key] = val
        return val


@dataclass(frozen=True, order=True)
class PolyDescriptor:
    """What the formulas need to know about a monic irreducible polynomial.

    ``label`` is ``"z-a"`` for the linear factor z - a (so ``"z-1"`` marks the
    distinguished eigenvalue 1); other labels are free-form identity tags.
    """

    degree: int
    label: str = ""

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if self.label == "z":
            raise ValueError("the polynomial z never carries a partition")

    @classmethod
    def linear(cls, a: int) -> PolyDescriptor:
        if a == 0:
            raise ValueError("z - 0 = z is excluded")
        return cls(1, f"z-{a}")

    @property
    def is_z_minus_one(self) -> bool:
        return self.label == "z-1"


Z_MINUS_ONE = PolyDescriptor.linear(1)


@dataclass(frozen=True)
class RationalFormData:
    """Nonempty partitions attached to monic irreducibles (a GL class)."""

    items: tuple[tuple[PolyDescriptor, Partition], ...] = ()

    def __post_init__(self):
        seen = set()
        for phi, lam in self.items:
            if phi in seen:
                raise ValueError(f"duplicate polynomial {phi}")
            seen.add(phi)
        object.__setattr__(self, "items", tuple(sorted((p, l) for p, l in self.items if l)))

    @classmethod
    def of(cls, mapping: Mapping[PolyDescriptor, Partition | Iterable[int]]) -> RationalFormData:
        items = []
        for phi, lam in mapping.items():
            if not isinstance(lam, Partition):
                lam = Partition.from_parts(lam)
            items.append((phi, lam))
        return cls(tuple(items))

    def get(self, phi: PolyDescriptor) -> Partition:
        for p, lam in self.items:
            if p == phi:
                return lam
        return Partition()

    @property
    def dimension(self) -> int:
        return sum(phi.degree * lam.size() for phi, lam in self.items)

    def __iter__(self):
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)


# class-size factors -------------------------------------------------------


def _form1(ctx: QContext, d: int, lam: Partition) -> Fraction:
    m = lam.multiplicities()
    keys = sorted(m)
    expo2 = sum(h * m[h] * m[i] for a, h in enumerate(keys) for i in keys[a + 1 :])
    expo2 = 2 * expo2 + sum((i - 1) * m[i] ** 2 for i in keys)
    Q = ctx.power(d)
    out = Q**expo2
    for i in keys:
        out *= gl_order(m[i], Q)
    return Fraction(out)


def _form2(ctx: QContext, d: int, lam: Partition) -> Fraction:
    Qd = ctx.extension(d)
    out = Qd.power(sum(c * c for c in lam.columns))
    for mi in lam.multiplicities().values():
        out *= Qd.inv_poch(mi)
    return out


def _form3(ctx: QContext, d: int, lam: Partition, variables: int) -> Fraction:
    t = 1 / ctx.power(d)
    return ctx.power(d * n_stat(lam)) / hall_littlewood_principal(lam, t, variables)


def class_size_factor(ctx: QContext, d: int, lam: Partition, form: int = 2, variables: int = 60) -> Fraction:
    """c_{GL,phi,q}(lam) for deg(phi) = d, by one of three equivalent expressions.

    Form 3 goes through a Hall-Littlewood evaluation in ``variables`` variables
    and is therefore exact only in the limit.
    """
    if not lam:
        return Fraction(1)
    if form == 1:
        return _form1(ctx, d, lam)
    if form == 2:
        return _form2(ctx, d, lam)
    if form == 3:
        return _form3(ctx, d, lam, variables)
    raise ValueError(f"form must be 1, 2 or 3, got {form}")


def centralizer_order(ctx: QContext, data: RationalFormData) -> Fraction:
    """|Z_GL(c)| for the class with the given data."""
    out = Fraction(1)
    for phi, lam in data:
        out *= _form2(ctx, phi.degree, lam)
    return out


# Hall-Littlewood at x_i = t^i ------------------------------------------------


def _horizontal_strips(lam: tuple[int, ...]):
    """All mu with lam/mu a horizontal strip (mu interlaces lam)."""
    ell = len(lam)

    def rec(i, acc):
        if i == ell:
            yield tuple(p for p in acc if p)
            return
        lo = lam[i + 1] if i + 1 < ell else 0
        for v in range(lo, lam[i] + 1):
            acc.append(v)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def _psi(lam: Partition, mu: Partition, t: Fraction) -> Fraction:
    # product over j with theta'_j = 0 and theta'_{j+1} = 1
    out = Fraction(1)
    width = len(lam.columns) + 1
    theta = [lam.column(j) - mu.column(j) for j in range(1, width + 2)]
    for j in range(1, width + 1):
        if theta[j - 1] == 0 and theta[j] == 1:
            out *= 1 - t ** mu.multiplicity(j)
    return out


def hall_littlewood_principal(lam: Partition, t, m: int) -> Fraction:
    """P_lam(t, t^2, ..., t^m; t) via the one-variable branching rule."""
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie in (0, 1)")
    if m < len(lam):
        raise ValueError(f"{m} variables cannot support {len(lam)} rows")
    return _hl(lam, t, m)


@functools.lru_cache(maxsize=200_000)
def _hl(lam: Partition, t: Fraction, m: int) -> Fraction:
    if not lam:
        return Fraction(1)
    if m < len(lam):
        return Fraction(0)
    x = t**m
    total = Fraction(0)
    size = lam.size()
    for mu_parts in _horizontal_strips(lam.parts):
        if len(mu_parts) > m - 1:
            continue
        mu = Partition(mu_parts)
        total += _psi(lam, mu, t) * x ** (size - mu.size()) * _hl(mu, t, m - 1)
    return total


def hall_littlewood_tail_bound(lam: Partition, t, m: int) -> Fraction:
    """Upper bound on P_lam(t, t^2, ...; t) - P_lam(t, ..., t^m; t).

    Monomials with an index above m are dominated by those of p_1^n, whose
    Schur expansion is positive and contains s_lam, and psi-weights lie in
    [0, 1]; so the gap is at most p_1(x)^n - p_1(x_1..x_m)^n.
    """
    t = as_fraction(t)
    n = lam.size()
    full = t / (1 - t)
    part = t * (1 - t**m) / (1 - t)
    return full**n - part**n


# the measures ----------------------------------------------------------------


def m_weight(p: MeasureParams, lam: Partition) -> Fraction:
    """u^|lam| / (prod_i q^{lam'_i^2} (1/q)_{m_i}); M_{u,q} without its prefactor."""
    return p.u ** lam.size() / _form2(p.ctx, 1, lam)


def n_weight(p: MeasureParams, lam: Partition) -> Fraction:
    if not lam:
        raise ValueError("N_{u,q} is supported on nonempty partitions")
    return p.u ** (lam.size() - 1) * (p.ctx.power(lam.column(1)) - 1) / _form2(p.ctx, 1, lam)


def measure_M(p: MeasureParams, lam: Partition) -> Fraction:
    return p.prefactor * m_weight(p, lam)


def measure_N(p: MeasureParams, lam: Partition) -> Fraction:
    return p.prefactor * n_weight(p, lam)


def measure_M_series(ctx: QContext, lam: Partition, order: int = DEFAULT_ORDER) -> Series:
    """M_{u,q}(lam) as a power series in u."""
    c = 1 / _form2(ctx, 1, lam)
    return euler_product_series(ctx, order) * Series.monomial(c, lam.size(), order)


def measure_N_series(ctx: QContext, lam: Partition, order: int = DEFAULT_ORDER) -> Series:
    if not lam:
        raise ValueError("N_{u,q} is supported on nonempty partitions")
    c = (ctx.power(lam.column(1)) - 1) / _form2(ctx, 1, lam)
    return euler_product_series(ctx, order) * Series.monomial(c, lam.size() - 1, order)


# element counts ------------------------------------------------------------


def _denominator(ctx: QContext, data: RationalFormData) -> Fraction:
    return centralizer_order(ctx, data)


def _integral(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _check_dim(data: RationalFormData, dim: int):
    if data.dimension != dim:
        raise ValueError(f"data has dimension {data.dimension}, expected {dim}")


def gl_count(n: int, ctx: QContext, data: RationalFormData):
    """Size of the GL(n,q) class with the given data."""
    _check_dim(data, n)
    return _integral(Fraction(gl_order(n, ctx.qi)) / _denominator(ctx, data))


def affine_count(n: int, ctx: QContext, data: RationalFormData):
    """Number of elements of A(n,q) whose GL(n+1,q) class has the given data."""
    _check_dim(data, n + 1)
    q = ctx.qi
    lam = data.get(Z_MINUS_ONE)
    return _integral(affine_order(n, q) * (ctx.power(lam.column(1)) - 1) / _denominator(ctx, data))


def parabolic_count(n: int, ctx: QContext, data: RationalFormData):
    """Number of elements of P(n,q) with the given GL(n+1,q) data.

    Only z - a with a != 0 can carry the distinguished row, and those are
    exactly the degree-1 entries of the data.
    """
    _check_dim(data, n + 1)
    q = ctx.qi
    total = sum((ctx.power(lam.column(1)) - 1 for phi, lam in data if phi.degree == 1), Fraction(0))
    return _integral(parabolic_order(n, q) * total / ((q - 1) * _denominator(ctx, data)))


# Markov chain on column heights ----------------------------------------------


def markov_initial_weight(p: MeasureParams, a: int) -> Fraction:
    """Q(a) without the prefactor."""
    if a < 1:
        raise ValueError("the first column has height at least 1")
    ctx, u = p.ctx, p.u
    return u ** (a - 1) / (ctx.power(a * a - a) * ctx.poch(u, a) * ctx.inv_poch(a - 1))


def markov_initial(p: MeasureParams, a: int) -> Fraction:
    return p.prefactor * markov_initial_weight(p, a)


def markov_kernel(p: MeasureParams, a: int, b: int) -> Fraction:
    """Probability that a column of height a is followed by one of height b."""
    if a < 0 or b < 0:
        raise ValueError("column heights are non-negative")
    if b > a:
        return Fraction(0)
    ctx, u = p.ctx, p.u
    num = u**b * ctx.inv_poch(a) * ctx.poch(u, a)
    den = ctx.power(b * b) * ctx.inv_poch(a - b) * ctx.inv_poch(b) * ctx.poch(u, b)
    return num / den


def markov_path_weight(p: MeasureParams, lam: Partition) -> Fraction:
    """Q(lam'_1) prod_i K(lam'_i, lam'_{i+1}) without the prefactor, ending at 0."""
    cols = list(lam.columns) + [0]
    w = markov_initial_weight(p, cols[0])
    for a, b in zip(cols, cols[1:]):
        w *= markov_kernel(p, a, b)
    return w
