"""Exact rationals, q-Pochhammer symbols and truncated power series in u.

Rationals are :class:`fractions.Fraction`. A :class:`Series` holds the
coefficients of u^0..u^D and never reads past its order.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Number = Union[int, Fraction]

DEFAULT_ORDER = 30


def as_fraction(x) -> Fraction:
    """Exact conversion; strings like ``"3/4"`` are accepted, floats are not."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/r' string")
    return x if isinstance(x, Fraction) else Fraction(x)


class QContext:
    """Holds q > 1 together with cached powers and Pochhammer values."""

    def __init__(self, q):
        q = as_fraction(q)
        if q <= 1:
            raise ValueError(f"q must exceed 1, got {q}")
        self.q = q
        self._pow = [Fraction(1)]
        self._poch: dict[tuple[Fraction, int], Fraction] = {}

    def __repr__(self) -> str:
        return f"QContext(q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, QContext) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("QContext", self.q))

    @property
    def is_integer(self) -> bool:
        return self.q.denominator == 1

    @property
    def qi(self) -> int:
        """q as a Python int (group-facing callers need integer q)."""
        if not self.is_integer:
            raise ValueError(f"q={self.q} is not an integer")
        return self.q.numerator

    def power(self, i: int) -> Fraction:
        if i < 0:
            return 1 / self.power(-i)
        while len(self._pow) <= i:
            self._pow.append(self._pow[-1] * self.q)
        return self._pow[i]

    def poch(self, x, i: int) -> Fraction:
        """prod_{j=1..i} (1 - x/q^j)."""
        x = as_fraction(x)
        key = (x, i)
        val = self._poch.get(key)
        if val is None:
            val = Fraction(1) if i == 0 else self.poch(x, i - 1) * (1 - x / self.power(i))
            self._poch[key] = val
        return val

    def inv_poch(self, i: int) -> Fraction:
        """(1/q)_i = (1 - 1/q)...(1 - 1/q^i)."""
        return self.poch(1, i)

    def extension(self, d: int) -> QContext:
        """Context for q^d."""
        return qcontext(self.q**d)


@functools.lru_cache(maxsize=None)
def qcontext(q) -> QContext:
    return QContext(q)


def pochhammer(ctx: QContext, x, i: int) -> Fraction:
    if i < 0:
        raise ValueError("i must be non-negative")
    return ctx.poch(x, i)


def gl_order(n: int, q: int) -> int:
    """|GL(n,q)|; GL(0,q) is the trivial group."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def affine_order(n: int, q: int) -> int:
    """|A(n,q)| = q^n |GL(n,q)|, with |A(-1,q)| = 0."""
    if n < 0:
        return 0
    return q**n * gl_order(n, q)


def parabolic_order(n: int, q: int) -> int:
    if n < 0:
        return 0
    return (q - 1) * affine_order(n, q)


class SeriesError(ArithmeticError):
    pass


class Series:
    """Power series in u truncated after u^order, exact coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = cs[: order + 1]
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.coeffs = cs
        self.order = order

    @classmethod
    def _raw(cls, coeffs: list[Fraction], order: int) -> Series:
        s = object.__new__(cls)
        s.coeffs = coeffs
        s.order = order
        return s

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls._raw([Fraction(0)] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> Series:
        return cls.monomial(1, 0, order)

    @classmethod
    def monomial(cls, c, k: int, order: int) -> Series:
        s = cls.zero(order)
        if k <= order:
            s.coeffs[k] = as_fraction(c)
        return s

    @classmethod
    def geometric(cls, ratio, order: int) -> Series:
        """1/(1 - ratio*u)."""
        ratio = as_fraction(ratio)
        cs = [Fraction(1)]
        for _ in range(order):
            cs.append(cs[-1] * ratio)
        return cls._raw(cs, order)

    @classmethod
    def from_function(cls, f: Callable[[int], Number], order: int) -> Series:
        return cls([f(i) for i in range(order + 1)], order)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.order >= 6 else ""
        return f"Series([{shown}{tail}], order={self.order})"

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            d = min(self.order, other.order)
            return self.coeffs[: d + 1] == other.coeffs[: d + 1]
        return NotImplemented

    __hash__ = None  # mutable-looking value; compare, don't hash

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return Series._raw(self.coeffs[: order + 1], order)

    def _coerce(self, other) -> Series:
        if isinstance(other, Series):
            return other
        return Series.monomial(other, 0, self.order)

    def __add__(self, other) -> Series:
        o = self._coerce(other)
        d = min(self.order, o.order)
        return Series._raw([a + b for a, b in zip(self.coeffs[: d + 1], o.coeffs)], d)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series._raw([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> Series:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Series:
        return self._coerce(other) - self

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            c = as_fraction(other)
            return Series._raw([c * a for a in self.coeffs], self.order)
        d = min(self.order, other.order)
        a = self.coeffs
        b = other.coeffs
        nza = [(i, x) for i, x in enumerate(a[: d + 1]) if x]
        nzb = [(j, y) for j, y in enumerate(b[: d + 1]) if y]
        out = [Fraction(0)] * (d + 1)
        for i, x in nza:
            for j, y in nzb:
                if i + j > d:
                    break
                out[i + j] += x * y
        return Series._raw(out, d)

    __rmul__ = __mul__

    def inverse(self) -> Series:
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("series with zero constant term is not invertible")
        d = self.order
        a = self.coeffs
        nz = [(k, a[k]) for k in range(1, d + 1) if a[k]]
        inv0 = 1 / c0
        out = [inv0]
        for n in range(1, d + 1):
            acc = Fraction(0)
            for k, ak in nz:
                if k > n:
                    break
                acc += ak * out[n - k]
            out.append(-acc * inv0)
        return Series._raw(out, d)

    def __truediv__(self, other) -> Series:
        if not isinstance(other, Series):
            return self * (1 / as_fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> Series:
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> Series:
        return series_int_pow(self, e)

    def scale(self, c) -> Series:
        """f(c*u)."""
        c = as_fraction(c)
        out, p = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * p)
            p *= c
        return Series._raw(out, self.order)

    def dilate(self, d: int, order: int | None = None) -> Series:
        """f(u^d), truncated at ``order`` (defaults to this series' order)."""
        if d < 1:
            raise ValueError("dilation degree must be positive")
        order = self.order if order is None else order
        if (order // d) > self.order:
            raise SeriesError("not enough terms to dilate to the requested order")
        out = [Fraction(0)] * (order + 1)
        for i in range(order // d + 1):
            out[i * d] = self.coeffs[i]
        return Series._raw(out, order)

    def shift(self, k: int) -> Series:
        """u^k * f."""
        if k < 0:
            raise ValueError("negative shift")
        out = [Fraction(0)] * min(k, self.order + 1) + self.coeffs[: max(self.order + 1 - k, 0)]
        return Series._raw(out, self.order)

    def power(self, e) -> Series:
        """f**e for any rational exponent when f has constant term 1.

        Uses the J.C.P. Miller recurrence, so huge integer exponents (counts of
        irreducible polynomials) cost O(D^2) regardless of size.
        """
        e = as_fraction(e)
        if e.denominator == 1 and e >= 0 and self.coeffs[0] != 1:
            return series_int_pow(self, int(e))
        if self.coeffs[0] != 1:
            raise SeriesError("rational powers need constant term 1")
        d = self.order
        a = self.coeffs
        nz = [(j, a[j]) for j in range(1, d + 1) if a[j]]
        out = [Fraction(1)]
        for k in range(1, d + 1):
            acc = Fraction(0)
            for j, aj in nz:
                if j > k:
                    break
                acc += ((e + 1) * j - k) * aj * out[k - j]
            out.append(acc / k)
        return Series._raw(out, d)

    def evaluate(self, u) -> Fraction:
        u = as_fraction(u)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_div(a: Series, b: Series) -> Series:
    return a / b


def series_int_pow(a: Series, e: int) -> Series:
    """Binary exponentiation for a non-negative integer exponent."""
    if e < 0 or int(e) != e:
        raise ValueError("exponent must be a non-negative integer")
    e = int(e)
    result = Series.one(a.order)
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def product(items: Iterable[Series], order: int) -> Series:
    out = Series.one(order)
    for s in items:
        out = out * s
    return out


def euler_product_series(ctx: QContext, order: int = DEFAULT_ORDER) -> Series:
    """prod_{r>=1} (1 - u/q^r) expanded as sum_i (-u)^i / ((q^i-1)...(q-1))."""
    cs = [Fraction(1)]
    denom = Fraction(1)
    for i in range(1, order + 1):
        denom *= ctx.power(i) - 1
        cs.append(Fraction((-1) ** i) / denom)
    return Series._raw(cs, order)


def truncated_euler_product(ctx: QContext, terms: int, order: int = DEFAULT_ORDER) -> Series:
    """prod_{r=1..terms} (1 - u/q^r) multiplied out directly."""
    out = Series.one(order)
    for r in range(1, terms + 1):
        out = out * Series([1, -1 / ctx.power(r)], order)
    return out


def tail_bound_terms(ctx: QContext, eps, u=1, start: int = 1) -> int:
    """Smallest R >= start-1 with u/(q^R (q-1)) < eps."""
    eps = as_fraction(eps)
    u = as_fraction(u)
    R = max(start - 1, 0)
    while u / (ctx.power(R) * (ctx.q - 1)) >= eps:
        R += 1
    return R


def partial_product(ctx: QContext, start: int, stop: int, u=1) -> Fraction:
    """prod_{r=start..stop} (1 - u/q^r)."""
    u = as_fraction(u)
    out = Fraction(1)
    for r in range(start, stop + 1):
        out *= 1 - u / ctx.power(r)
    return out


def tail_product_bounds(ctx: QContext, start: int, stop: int, u=1) -> tuple[Fraction, Fraction]:
    """Rigorous bounds on prod_{r>=start} (1 - u/q^r) from the first terms up to ``stop``.

    The omitted factor lies in [1 - sum_{r>R} u/q^r, 1] with the sum equal to
    u/(q^R (q-1)).
    """
    u = as_fraction(u)
    R = max(stop, start - 1)
    hi = partial_product(ctx, start, R, u)
    lo = hi * (1 - u / (ctx.power(R) * (ctx.q - 1)))
    return lo, hi


def numeric_tail_product(ctx: QContext, start: int = 1, eps=Fraction(1, 10**30), u=1) -> Fraction:
    """prod_{r>=start} (1 - u/q^r) truncated so the omitted tail moves it by < eps."""
    R = tail_bound_terms(ctx, eps, u, start)
    return partial_product(ctx, start, R, u)


def to_decimal(x: Fraction, digits: int = 15) -> str:
    """Fixed-point decimal rendering without going through float."""
    x = as_fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = round(x * 10**digits)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
