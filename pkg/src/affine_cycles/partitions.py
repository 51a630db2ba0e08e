"""Integer partitions: conjugation, statistics, single-box moves, enumeration."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

DEFAULT_ENUMERATION_BOUND = 60


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts.

    Column heights (the conjugate) and multiplicities are computed lazily.
    """

    parts: tuple[int, ...] = ()
    _conj: tuple[int, ...] | None = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p < 1:
                raise PartitionError(f"parts must be positive integers: {parts}")
            if i and parts[i - 1] < p:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> Partition:
        """Build from any iterable of positive parts, sorting them."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_columns(cls, heights: Iterable[int]) -> Partition:
        return cls(_transpose(tuple(h for h in heights if h)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def size(self) -> int:
        return sum(self.parts)

    @property
    def columns(self) -> tuple[int, ...]:
        """Column heights lambda'_1 >= lambda'_2 >= ..."""
        if self._conj is None:
            object.__setattr__(self, "_conj", _transpose(self.parts))
        return self._conj

    def column(self, s: int) -> int:
        """Height of column ``s`` (1-based); zero past the last column."""
        cols = self.columns
        return cols[s - 1] if 1 <= s <= len(cols) else 0

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def to_json(self) -> list[int]:
        return list(self.parts)


def _transpose(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1))


def conjugate(lam: Partition) -> Partition:
    return Partition(lam.columns)


def n_stat(lam: Partition) -> int:
    """sum_i (i-1) * lambda_i."""
    return sum(i * p for i, p in enumerate(lam.parts))


def add_to_column(lam: Partition, s: int) -> Partition:
    """Add one box at the bottom of column ``s``."""
    if s < 1 or (s > 1 and lam.column(s) >= lam.column(s - 1)):
        raise PartitionError(f"cannot add a box to column {s} of {lam!r}")
    cols = list(lam.columns) + [0]
    cols[s - 1] += 1
    return Partition.from_columns(cols)


def remove_from_column(lam: Partition, s: int) -> Partition:
    """Remove the bottom box of column ``s``; inverse of :func:`add_to_column`."""
    h = lam.column(s)
    if h == 0 or lam.column(s + 1) >= h:
        raise PartitionError(f"cannot remove a box from column {s} of {lam!r}")
    cols = list(lam.columns)
    cols[s - 1] -= 1
    return Partition.from_columns(cols)


def addable_columns(lam: Partition) -> list[int]:
    return [s for s in range(1, len(lam.columns) + 2) if s == 1 or lam.column(s) < lam.column(s - 1)]


def removable_columns(lam: Partition) -> list[int]:
    return [s for s in range(1, len(lam.columns) + 1) if lam.column(s + 1) < lam.column(s)]


def attach_row(lam: Partition, k: int) -> Partition:
    """Multiset union (k) u lam."""
    if k < 1:
        raise PartitionError("row length must be positive")
    return Partition.from_parts(lam.parts + (k,))


def _descending(n: int) -> Iterator[tuple[int, ...]]:
    # reverse lexicographic successor rule; yields tuples without validation cost
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        a[-1] -= 1
        x, rem = a[-1], ones + 1
        while rem > x:
            a.append(x)
            rem -= x
        if rem:
            a.append(rem)


def _trusted(parts: tuple[int, ...]) -> Partition:
    lam = object.__new__(Partition)
    object.__setattr__(lam, "parts", parts)
    object.__setattr__(lam, "_conj", None)
    return lam


def iter_partitions(n: int) -> Iterator[Partition]:
    """Lazily yield the partitions of ``n``, lexicographically decreasing."""
    if n < 0:
        raise PartitionError("n must be non-negative")
    return (_trusted(p) for p in _descending(n))


@functools.lru_cache(maxsize=64)
def _enumerate(n: int) -> tuple[Partition, ...]:
    return tuple(iter_partitions(n))


def enumerate_partitions(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if n < 0:
        raise PartitionError("n must be non-negative")
    if n > bound:
        raise PartitionError(f"n={n} exceeds enumeration bound {bound}")
    if n > 30:
        return list(iter_partitions(n))
    return list(_enumerate(n))


def partitions_up_to(max_size: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> Iterator[Partition]:
    for n in range(max_size + 1):
        yield from enumerate_partitions(n, bound)
