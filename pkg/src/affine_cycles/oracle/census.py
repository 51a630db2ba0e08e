"""Rational canonical form data of explicit matrices and whole-group censuses."""

from __future__ import annotations

import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from ..cycle_index import GroupKind
from ..measures import PolyDescriptor, RationalFormData, Z_MINUS_ONE
from ..partitions import Partition
from .field import OracleError, Poly, irreducible_polys, linear_root
from .groups import DEFAULT_CAP, enumerate_group
from .matrix import Matrix, mat_mul, nullity, poly_at

THREADS_ENV = "AFFINE_CYCLES_THREADS"


def descriptor(f: Poly, p: int) -> PolyDescriptor:
    """PolyDescriptor for a monic irreducible f != z over F_p."""
    d = len(f) - 1
    if d == 1:
        return PolyDescriptor.linear(linear_root(f, p))
    return PolyDescriptor(d, "poly:" + ",".join(map(str, f)))


def descriptor_poly(phi: PolyDescriptor, p: int) -> Poly:
    if phi.label.startswith("z-"):
        return ((-int(phi.label[2:])) % p, 1)
    if phi.label.startswith("poly:"):
        return tuple(int(c) for c in phi.label[5:].split(","))
    raise OracleError(f"descriptor {phi} does not name a concrete polynomial")


def _candidates(size: int, p: int):
    for d in range(1, size + 1):
        for f in irreducible_polys(p, d):
            if d == 1 and f[0] == 0:
                continue
            yield f


def rational_form_data(alpha: Matrix, p: int) -> RationalFormData:
    """Read off lam_phi from kernel dimensions of powers of phi(alpha)."""
    size = len(alpha)
    items = []
    covered = 0
    for f in _candidates(size, p):
        if covered == size:
            break
        d = len(f) - 1
        if d > size - covered:
            continue
        base = poly_at(f, alpha, p)
        prev, heights = 0, []
        power = base
        while True:
            k = nullity(power, p)
            if k == prev:
                break
            if (k - prev) % d:
                raise OracleError("kernel growth not divisible by the degree")
            heights.append((k - prev) // d)
            prev = k
            if k == size:
                break
            power = mat_mul(power, base, p)
        if heights:
            items.append((descriptor(f, p), Partition.from_columns(heights)))
            covered += prev
    if covered != size:
        raise OracleError("matrix is singular (z divides its characteristic polynomial)")
    return RationalFormData(tuple(items))


def charpoly_from_data(data: RationalFormData, p: int) -> Poly:
    from .field import poly_mul, poly_pow

    out: Poly = (1,)
    for phi, lam in data:
        out = poly_mul(out, poly_pow(descriptor_poly(phi, p), lam.size(), p), p)
    return out


# derived statistics -----------------------------------------------------------


def is_separable(data: RationalFormData) -> bool:
    return all(lam.size() <= 1 for _, lam in data)


def is_cyclic(data: RationalFormData) -> bool:
    return all(len(lam) <= 1 for _, lam in data)


def is_semisimple(data: RationalFormData) -> bool:
    return all(lam.column(2) == 0 for _, lam in data)


def is_unipotent(data: RationalFormData) -> bool:
    return all(phi.is_z_minus_one for phi, _ in data)


def fixed_space_dim(data: RationalFormData) -> int:
    return data.get(Z_MINUS_ONE).column(1)


@dataclass
class CensusRecord:
    kind: GroupKind
    n: int
    q: int
    counts: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def matrix_size(self) -> int:
        return self.n if self.kind is GroupKind.GL else self.n + 1

    def merge(self, other: CensusRecord) -> CensusRecord:
        if (self.kind, self.n, self.q) != (other.kind, other.n, other.q):
            raise ValueError("cannot merge censuses of different groups")
        return CensusRecord(self.kind, self.n, self.q, self.counts + other.counts)

    def count_where(self, pred) -> int:
        return sum(c for key, c in self.counts.items() if pred(key))

    def fraction_where(self, pred):
        from fractions import Fraction

        return Fraction(self.count_where(pred), self.total)

    def fixed_space_histogram(self) -> dict[int, int]:
        out: Counter = Counter()
        for key, c in self.counts.items():
            out[fixed_space_dim(key)] += c
        return dict(sorted(out.items()))

    def unipotent_by_fixed_space(self) -> dict[int, int]:
        out: Counter = Counter()
        for key, c in self.counts.items():
            if is_unipotent(key):
                out[fixed_space_dim(key)] += c
        return dict(sorted(out.items()))

    def marginal(self, phi: PolyDescriptor) -> dict[Partition, int]:
        out: Counter = Counter()
        for key, c in self.counts.items():
            out[key.get(phi)] += c
        return dict(out)

    def summary(self) -> dict:
        return {
            "group": self.kind.value,
            "n": self.n,
            "q": self.q,
            "order": self.total,
            "classes": len(self.counts),
            "separable": self.count_where(is_separable),
            "cyclic": self.count_where(is_cyclic),
            "semisimple": self.count_where(is_semisimple),
            "unipotent": self.count_where(is_unipotent),
            "fixed_space": {str(k): v for k, v in self.fixed_space_histogram().items()},
        }

    def to_json_records(self) -> list[dict]:
        rows = []
        for key, c in self.counts.items():
            polys = [[list(descriptor_poly(phi, self.q)), lam.to_json()] for phi, lam in key]
            polys.sort()
            rows.append({"polys": polys, "count": c})
        rows.sort(key=lambda r: json.dumps(r["polys"]))
        return rows

    def dumps(self) -> str:
        return json.dumps(self.to_json_records(), separators=(",", ":"))

    @classmethod
    def from_json_records(cls, kind: GroupKind, n: int, q: int, rows: Iterable[dict]) -> CensusRecord:
        counts: Counter = Counter()
        for row in rows:
            items = tuple((descriptor(tuple(f), q), Partition.from_parts(parts)) for f, parts in row["polys"])
            counts[RationalFormData(items)] += row["count"]
        return cls(kind, n, q, counts)


def _census_shard(args) -> Counter:
    kind, n, q, cap, shard, shards = args
    counts: Counter = Counter()
    for alpha in enumerate_group(kind, n, q, cap, shard, shards):
        counts[rational_form_data(alpha, q)] += 1
    return counts


def worker_count(requested: int | None = None) -> int:
    env = os.environ.get(THREADS_ENV)
    limit = int(env) if env and env.isdigit() and int(env) > 0 else (os.cpu_count() or 1)
    return max(1, min(requested or limit, limit))


def census(kind: GroupKind, n: int, q: int, cap: int = DEFAULT_CAP, shards: int = 1, workers: int | None = None) -> CensusRecord:
    """Full histogram of rational form data over the group."""
    jobs = [(kind, n, q, cap, s, shards) for s in range(shards)]
    workers = worker_count(workers) if shards > 1 else 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, shards)) as pool:
            parts = list(pool.map(_census_shard, jobs))
    else:
        parts = [_census_shard(j) for j in jobs]
    total: Counter = Counter()
    for c in parts:
        total.update(c)
    return CensusRecord(kind, n, q, total)
