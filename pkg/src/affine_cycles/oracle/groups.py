"""Exhaustive enumeration of GL(n,p), A(n,p) and P(n,p) as matrices."""

from __future__ import annotations

import itertools
from typing import Iterator

from ..cycle_index import GroupKind
from .field import CapExceeded, require_prime
from .matrix import Matrix

DEFAULT_CAP = 10**7


def _vectors(n: int, p: int):
    return list(itertools.product(range(p), repeat=n))


def _span_add(span: set, v, p: int) -> set:
    return {tuple((x + c * y) % p for x, y in zip(w, v)) for w in span for c in range(p)}


def enumerate_gl(n: int, p: int) -> Iterator[Matrix]:
    """Invertible n x n matrices, rows chosen lexicographically outside the running span."""
    vecs = _vectors(n, p)

    def rec(rows, span):
        if len(rows) == n:
            yield tuple(rows)
            return
        for v in vecs:
            if v not in span:
                rows.append(v)
                yield from rec(rows, _span_add(span, v, p))
                rows.pop()

    yield from rec([], {tuple([0] * n)})


def embed(a: int, v, m: Matrix) -> Matrix:
    """The block matrix [[a, v], [0, m]]."""
    top = (a,) + tuple(v)
    return (top,) + tuple((0,) + tuple(row) for row in m)


def enumerate_group(kind: GroupKind, n: int, p: int, cap: int = DEFAULT_CAP, shard: int = 0, shards: int = 1) -> Iterator[Matrix]:
    """Every element exactly once; shard s of S keeps stream indices congruent to s mod S."""
    require_prime(p)
    if not 0 <= shard < shards:
        raise ValueError("shard index out of range")
    if kind.order(n, p) > cap:
        raise CapExceeded(f"|{kind.value}({n},{p})| = {kind.order(n, p)} exceeds cap {cap}")
    idx = 0
    if kind is GroupKind.GL:
        for m in enumerate_gl(n, p):
            if idx % shards == shard:
                yield m
            idx += 1
        return
    scalars = [1] if kind is GroupKind.AFFINE else list(range(1, p))
    vecs = _vectors(n, p)
    for m in enumerate_gl(n, p):
        for v in vecs:
            for a in scalars:
                if idx % shards == shard:
                    yield embed(a, v, m)
                idx += 1
