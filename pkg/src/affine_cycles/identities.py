"""Formal q-series identities checked coefficient by coefficient.

Series in t = 1/q use the same :class:`Series` carrier as series in u.
The Euler product identity is bivariate, so it is checked on an array of
integer coefficients indexed by (u-degree, t-degree).
"""

from __future__ import annotations

from fractions import Fraction

from .cycle_index import GroupKind, count_irreducibles, cyclic_series, separable_series
from .exact import QContext, Series, euler_product_series, truncated_euler_product

Grid = list[list[int]]


def _t_poch_inverse(i: int, order: int) -> Series:
    """1 / ((1-t)(1-t^2)...(1-t^i)) as a t-series."""
    out = Series.one(order)
    for j in range(1, i + 1):
        out = out * Series.geometric(1, order // j).dilate(j, order)
    return out


def euler_product_grid(u_order: int, t_order: int) -> Grid:
    """prod_{r>=1} (1 - u t^r) multiplied out, truncated in both variables."""
    grid = [[0] * (t_order + 1) for _ in range(u_order + 1)]
    grid[0][0] = 1
    for r in range(1, t_order + 1):
        for i in range(u_order, 0, -1):
            row, prev = grid[i], grid[i - 1]
            for j in range(t_order, r - 1, -1):
                if prev[j - r]:
                    row[j] -= prev[j - r]
    return grid


def euler_sum_grid(u_order: int, t_order: int) -> Grid:
    """sum_i (-u)^i / ((q^i - 1)...(q - 1)) rewritten in t = 1/q.

    Each denominator factor q^j - 1 = t^{-j}(1 - t^j), so the u^i coefficient
    is (-1)^i t^{i(i+1)/2} / ((1-t)...(1-t^i)).
    """
    grid = []
    for i in range(u_order + 1):
        row = [0] * (t_order + 1)
        low = i * (i + 1) // 2
        if low <= t_order:
            inv = _t_poch_inverse(i, t_order - low)
            for j, c in enumerate(inv):
                assert c.denominator == 1
                row[low + j] = (-1) ** i * int(c)
        grid.append(row)
    return grid


def check_euler_formal(u_order: int = 40, t_order: int = 120) -> bool:
    return euler_product_grid(u_order, t_order) == euler_sum_grid(u_order, t_order)


def euler_numeric_gap(ctx: QContext, order: int, terms: int) -> Fraction:
    """Largest coefficient gap between the sum form and the product over r <= terms."""
    a = euler_product_series(ctx, order)
    b = truncated_euler_product(ctx, terms, order)
    return max(abs(x - y) for x, y in zip(a, b))


def check_all_polynomials(ctx: QContext, order: int = 30) -> bool:
    """prod over all monic irreducibles phi of (1 - (u/q)^{deg phi}) equals 1 - u."""
    out = Series.one(order)
    for d in range(1, order + 1):
        factor = Series.one(order) - Series.monomial(1 / ctx.power(d), d, order)
        out = out * factor.power(count_irreducibles(ctx, d))
    return out == Series([1, -1], order)


def check_wall_trick(ctx: QContext, order: int = 30) -> bool:
    """(1 - u) C_A(u) = (1 - u/q) S_A(u/q)."""
    c = cyclic_series(GroupKind.AFFINE, ctx, order)
    s = separable_series(GroupKind.AFFINE, ctx, order)
    lhs = Series([1, -1], order) * c
    rhs = Series([1, -1 / ctx.q], order) * s.scale(1 / ctx.q)
    return lhs == rhs


def check_separable_ratio(ctx: QContext, order: int = 30) -> bool:
    """S_A (1 + u/(q-1)) = S_GL."""
    a = separable_series(GroupKind.AFFINE, ctx, order)
    gl = separable_series(GroupKind.GL, ctx, order)
    return a * Series([1, 1 / (ctx.q - 1)], order) == gl


def rogers_ramanujan_sides(shift: int, order: int = 40) -> tuple[Series, Series]:
    """(sum_k t^{k^2 + shift k}/(t;t)_k, prod over r = 1+shift, 4-shift mod 5 of 1/(1-t^r))."""
    total = Series.zero(order)
    k = 0
    while k * k + shift * k <= order:
        low = k * k + shift * k
        total = total + _t_poch_inverse(k, order).shift(low)
        k += 1
    residues = {1, 4} if shift == 0 else {2, 3}
    prod = Series.one(order)
    for r in range(1, order + 1):
        if r % 5 in residues:
            prod = prod * Series.geometric(1, order // r).dilate(r, order)
    return total, prod


def check_rogers_ramanujan(shift: int, order: int = 40) -> bool:
    lhs, rhs = rogers_ramanujan_sides(shift, order)
    return lhs == rhs
