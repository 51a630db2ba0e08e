"""Random partition generators driven by exact lazily-refined uniforms.

Every discrete choice compares a uniform variate, revealed 32 bits at a
time, against exact rational thresholds (or against rigorous rational
brackets of an irrational threshold such as prod_{r>=N}(1 - u/q^r)), so
the sampled laws carry no floating point bias.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .exact import QContext
from .measures import MeasureParams, markov_initial_weight, markov_kernel
from .partitions import Partition, add_to_column

CHUNK = 32
N_MAX = 64

Bounds = Callable[[int], "tuple[Fraction, Fraction]"]


class LazyUniform:
    """A uniform variate on [0, 1) known so far as the dyadic interval [k/2^b, (k+1)/2^b)."""

    __slots__ = ("_source", "k", "bits")

    def __init__(self, source):
        self._source = source
        self.k = 0
        self.bits = 0

    def extend(self) -> None:
        self.k = (self.k << CHUNK) | self._source.getrandbits(CHUNK)
        self.bits += CHUNK

    def less_than(self, x: Fraction) -> bool:
        """Decide U < x exactly."""
        if x <= 0:
            return False
        if x >= 1:
            return True
        n, d = x.numerator, x.denominator
        if not self.bits:
            self.extend()
        while True:
            scaled = n << self.bits
            if (self.k + 1) * d <= scaled:
                return True
            if self.k * d >= scaled:
                return False
            self.extend()

    def less_than_bounded(self, bounds: Bounds) -> bool:
        """Decide U < x where ``bounds(level)`` brackets x ever more tightly."""
        if not self.bits:
            self.extend()
        level = 0
        while True:
            lo, hi = bounds(level)
            top = 1 << self.bits
            if (self.k + 1) * lo.denominator <= lo.numerator * top:
                return True
            if self.k * hi.denominator >= hi.numerator * top:
                return False
            self.extend()
            level += 1


class RandomStream:
    """Deterministic bit source keyed by (seed, stream id)."""

    def __init__(self, seed: int = 0, stream_id: int = 0, source=None):
        self.seed = seed
        self.stream_id = stream_id
        self._source = source if source is not None else random.Random(f"{seed}:{stream_id}")

    def uniform(self) -> LazyUniform:
        return LazyUniform(self._source)

    def bernoulli(self, p) -> bool:
        p = Fraction(p)
        if p <= 0:
            return False
        if p >= 1:
            return True
        return self.uniform().less_than(p)

    def coin(self, n: int, d: int) -> bool:
        """Bernoulli(n/d) for 0 < n < d, settled by the first chunk in all but rare cases."""
        r = self._source.getrandbits(CHUNK)
        scaled = n << CHUNK
        if r * d >= scaled:
            return False
        if (r + 1) * d <= scaled:
            return True
        u = LazyUniform(self._source)
        u.k, u.bits = r, CHUNK
        return u.less_than(Fraction(n, d))

    def bernoulli_bounded(self, bounds: Bounds) -> bool:
        return self.uniform().less_than_bounded(bounds)

    def choose(self, probs: Sequence[Fraction]) -> int:
        """Index i with probability probs[i]; the probabilities must sum to 1 exactly."""
        u = self.uniform()
        acc = Fraction(0)
        last = max(i for i, w in enumerate(probs) if w)
        for i, w in enumerate(probs):
            if not w:
                continue
            if i == last:
                return i
            acc += w
            if u.less_than(acc):
                return i
        raise AssertionError("unreachable")


# ---------------------------------------------------------------------------
# tableau paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TableauPath:
    """A standard Young tableau recorded as the sequence of columns that received each box."""

    columns: tuple[int, ...]
    partition: Partition
    coins: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def replay(cls, columns: Iterable[int]) -> TableauPath:
        lam = Partition(())
        cols = tuple(columns)
        for s in cols:
            lam = add_to_column(lam, s)
        return cls(cols, lam)

    def shapes(self):
        lam = Partition(())
        yield lam
        for s in self.columns:
            lam = add_to_column(lam, s)
            yield lam

    def first_column_entries(self) -> list[int]:
        """Entries T_(m,1): the step (1-based) at which row m was opened."""
        return [i + 1 for i, s in enumerate(self.columns) if s == 1]

    def gaps(self) -> list[int]:
        """h_1..h_k: boxes added while the tableau had exactly m rows."""
        t = self.first_column_entries()
        if not t:
            return []
        out = [t[m + 1] - t[m] - 1 for m in range(len(t) - 1)]
        out.append(len(self.columns) - t[-1])
        return out

    def heads_counts(self, upto: int) -> tuple[int, ...]:
        """(a_1, ..., a_upto): heads shown by each coin, for paths that recorded coins."""
        out = [0] * upto
        for c in self.coins:
            if c <= upto:
                out[c - 1] += 1
        return tuple(out)

    def to_json(self) -> dict:
        return {"partition": self.partition.to_json(), "path": list(self.columns)}


# ---------------------------------------------------------------------------
# exact transition rules
# ---------------------------------------------------------------------------


def edge_weight(p: MeasureParams, lam: Partition, s: int) -> Fraction:
    """Young lattice weight for adding a box to column s of lam."""
    if s < 1 or (s > 1 and lam.column(s) >= lam.column(s - 1)):
        raise ValueError(f"cannot add a box to column {s} of {lam}")
    q, u = p.q, p.u
    head = lam.column(1)
    if s == 1:
        return u / (q**head * (q ** (head + 1) - 1))
    return u * (q ** -lam.column(s) - q ** -lam.column(s - 1)) / (q**head - 1)


def yta_column_probs(ctx: QContext, lam: Partition, N: int) -> list[Fraction]:
    """Column choice after a head on coin N; entry s-1 is the chance of column s."""
    q = ctx.q
    cols = lam.columns
    denom = q**N - 1
    probs = [(q ** (N - lam.column(1)) - 1) / denom]
    for s in range(2, len(cols) + 2):
        probs.append((q ** (N - lam.column(s)) - q ** (N - lam.column(s - 1))) / denom)
    return probs


def affine_column_probs(ctx: QContext, lam: Partition) -> list[Fraction]:
    """Column choice for the single extra box turning an M sample into an N sample."""
    q = ctx.q
    cols = lam.columns
    probs = [q ** -lam.column(1)]
    for s in range(2, len(cols) + 2):
        probs.append(q ** -lam.column(s) - q ** -lam.column(s - 1))
    return probs


def yta_path_probability(p: MeasureParams, path: TableauPath) -> Fraction:
    """Chance the tableau algorithm outputs this tableau: prefactor times edge weights."""
    out = p.prefactor
    shapes = list(path.shapes())
    for lam, s in zip(shapes, path.columns):
        out *= edge_weight(p, lam, s)
    return out


def affine_path_probability(p: MeasureParams, path: TableauPath) -> Fraction:
    """Chance the affine algorithm outputs this tableau (last box from the extra step)."""
    if not path.columns:
        return Fraction(0)
    head = TableauPath.replay(path.columns[:-1])
    lam = head.partition
    return yta_path_probability(p, head) * affine_column_probs(p.ctx, lam)[path.columns[-1] - 1]


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------


def _require_subcritical(p: MeasureParams) -> None:
    if not p.u < 1:
        raise ValueError("samplers need 0 < u < 1 (the coin loop does not terminate at u = 1)")


class _Builder:
    def __init__(self, ctx: QContext):
        self.ctx = ctx
        self.lam = Partition(())
        self.columns: list[int] = []
        self.coins: list[int] = []

    def add(self, s: int, coin: int | None = None) -> None:
        self.lam = add_to_column(self.lam, s)
        self.columns.append(s)
        if coin is not None:
            self.coins.append(coin)

    def yta_step(self, rng: RandomStream, N: int) -> None:
        self.add(rng.choose(yta_column_probs(self.ctx, self.lam, N)) + 1, N)

    def affine_step(self, rng: RandomStream) -> None:
        self.add(rng.choose(affine_column_probs(self.ctx, self.lam)) + 1)

    def path(self) -> TableauPath:
        return TableauPath(tuple(self.columns), self.lam, tuple(self.coins))


def _complement(bounds: Bounds) -> Bounds:
    def out(level):
        lo, hi = bounds(level)
        return 1 - hi, 1 - lo

    return out


def _scaled(c: Fraction, denom: Bounds) -> Bounds:
    """Brackets for c / D given brackets for D > 0."""

    def out(level):
        lo, hi = denom(level)
        if lo <= 0:
            return Fraction(0), Fraction(1)
        return c / hi, min(Fraction(1), c / lo)

    return out


def _run_terminating(p: MeasureParams, rng: RandomStream, b: _Builder, N: int) -> int:
    """Draw heads counts for coins N, N+1, ... by interval lookups; returns lookups used.

    For each coin the unit interval is cut, in order, into the runs of
    j >= 1 heads (lengths (u/q^N)^j (1 - u/q^N)), then t_0 (no head now but
    some head later) and finally t^(N) (all remaining tosses tails). Once a
    t_0 interval is hit the next coin is drawn conditionally on some head
    still being due.
    """
    pending = False
    lookups = 0
    while True:
        x = p.u / p.q**N
        tail = (lambda start: lambda level: p.prefactor_bounds(start, level))(N)
        not_all_tails = _complement(tail)
        u = rng.uniform()
        lookups += 1
        if pending:
            head_hit = u.less_than_bounded(_scaled(x, not_all_tails))
            threshold = lambda j: _scaled(x - x ** (j + 1), not_all_tails)
        else:
            head_hit = u.less_than(x)
            threshold = lambda j: (lambda level, c=x - x ** (j + 1): (c, c))
        if head_hit:
            j = 1
            while not u.less_than_bounded(threshold(j)):
                j += 1
            for _ in range(j):
                b.yta_step(rng, N)
            pending = False
        elif pending or u.less_than_bounded(not_all_tails):
            pending = True
        else:
            return lookups
        N += 1


def _coin_table(p: MeasureParams, n_max: int) -> list[tuple[int, int]]:
    key = ("coins", n_max)
    table = p._cache.get(key)
    if table is None:
        table = []
        for N in range(1, n_max + 1):
            x = p.u / p.q**N
            table.append((x.numerator, x.denominator))
        p._cache[key] = table
    return table


def sample_M_yta(p: MeasureParams, rng: RandomStream, n_max: int = N_MAX) -> TableauPath:
    """Tableau algorithm for M_{u,q}: coin N shows heads with chance u/q^N.

    Coins 1..n_max are flipped one toss at a time; the remaining coins are
    resolved exactly by interval lookups, which leaves the law unchanged.
    """
    _require_subcritical(p)
    b = _Builder(p.ctx)
    coins = _coin_table(p, n_max)
    N = 1
    while N <= n_max:
        if rng.coin(*coins[N - 1]):
            b.yta_step(rng, N)
        else:
            N += 1
    _run_terminating(p, rng, b, N)
    return b.path()


def sample_M_terminating(p: MeasureParams, rng: RandomStream) -> TableauPath:
    """Tableau algorithm for M_{u,q} with the heads counts drawn coin by coin by interval lookup."""
    _require_subcritical(p)
    b = _Builder(p.ctx)
    _run_terminating(p, rng, b, 1)
    return b.path()


def sample_N_affine(p: MeasureParams, rng: RandomStream, base: str = "yta") -> TableauPath:
    """M_{u,q} sample plus one extra box; distributed as N_{u,q}."""
    head = sample_M_yta(p, rng) if base == "yta" else sample_M_terminating(p, rng)
    b = _Builder(p.ctx)
    for s, c in zip(head.columns, head.coins):
        b.add(s, c)
    b.affine_step(rng)
    return b.path()


def sample_N_markov(p: MeasureParams, rng: RandomStream) -> Partition:
    """Column heights from the chain Q, K; distributed as N_{u,q}."""
    _require_subcritical(p)
    u = rng.uniform()
    a, acc = 0, Fraction(0)
    while True:
        a += 1
        acc += markov_initial_weight(p, a)
        c = acc

        def bracket(level, c=c):
            lo, hi = p.prefactor_bounds(1, level)
            return c * lo, c * hi

        if u.less_than_bounded(bracket):
            break
    heights = [a]
    while a:
        a = rng.choose([markov_kernel(p, a, b) for b in range(a + 1)])
        if a:
            heights.append(a)
    return Partition.from_columns(heights)


def sample_N_given_size(n: int, ctx: QContext, rng: RandomStream) -> TableauPath:
    """N_{u,q} conditioned on |lambda| = n + 1 (the law does not depend on u)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    b = _Builder(ctx)
    N = 1
    remaining = n
    while remaining:
        if rng.bernoulli(1 - 1 / ctx.q**remaining):
            b.yta_step(rng, N)
            remaining -= 1
        else:
            N += 1
    b.affine_step(rng)
    return b.path()


def conditional_law(n: int, ctx: QContext, n_cap: int = 80) -> dict[Partition, Fraction]:
    """Exact output law of :func:`sample_N_given_size`, ignoring runs where N exceeds n_cap.

    The neglected mass is at most n * q^{-(n_cap - n)} scale.
    """
    q = ctx.q
    # state: (partition, N) with given remaining count
    states: dict[tuple[Partition, int], Fraction] = {(Partition(()), 1): Fraction(1)}
    for remaining in range(n, 0, -1):
        h = 1 - 1 / q**remaining
        nxt: dict[tuple[Partition, int], Fraction] = {}
        for (lam, N0), w in states.items():
            stay = w
            for N in range(N0, n_cap + 1):
                hit = stay * h
                for s, pr in enumerate(yta_column_probs(ctx, lam, N), start=1):
                    if pr:
                        key = (add_to_column(lam, s), N)
                        nxt[key] = nxt.get(key, Fraction(0)) + hit * pr
                stay -= hit
        states = nxt
    law: dict[Partition, Fraction] = {}
    for (lam, _), w in states.items():
        for s, pr in enumerate(affine_column_probs(ctx, lam), start=1):
            if pr:
                mu = add_to_column(lam, s)
                law[mu] = law.get(mu, Fraction(0)) + w * pr
    return law


# ---------------------------------------------------------------------------
# empirical comparison
# ---------------------------------------------------------------------------


def total_variation(counts: dict, exact: dict, total: int) -> float:
    """Half the l1 distance, over the support of ``exact``, between empirical and exact laws."""
    return 0.5 * sum(abs(counts.get(k, 0) / total - float(v)) for k, v in exact.items())
