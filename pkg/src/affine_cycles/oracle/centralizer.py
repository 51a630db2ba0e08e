"""Conjugacy classes of A(n,p) and P(n,p) by orbit partitioning, with centralizer orders.

Two closed-form candidates for the centralizer order of the class with
GL(n+1) data lambda (where lambda at the distinguished eigenvalue is
(k) joined with lam_bar) are compared against exhaustive counts:

* ``printed``: exponent k-1 + 2 sum_{i<k} i m_i + (2k-1) sum_{k<=i<=n-k} m_i
* ``corrected``: same, but the last sum runs over every i >= k
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from ..cycle_index import GroupKind
from ..exact import qcontext
from ..measures import PolyDescriptor, RationalFormData, class_size_factor
from ..partitions import Partition
from .census import rational_form_data
from .field import CapExceeded
from .groups import enumerate_group
from .matrix import Matrix, inverse, mat_mul

PAIR_CAP = 10**7
VARIANTS = ("printed", "corrected")


def _gl_centralizer(data: RationalFormData, q: int) -> int:
    ctx = qcontext(q)
    out = 1
    for phi, lam in data:
        out *= class_size_factor(ctx, phi.degree, lam, form=2)
    assert out.denominator == 1
    return int(out)


def _exponent(lam_bar: Partition, k: int, n: int, variant: str) -> int:
    low = sum(i * lam_bar.multiplicity(i) for i in range(1, k))
    top = n - k if variant == "printed" else max(lam_bar.parts, default=0)
    high = sum(lam_bar.multiplicity(i) for i in range(k, top + 1))
    return k - 1 + 2 * low + (2 * k - 1) * high


def predicted_centralizers(kind: GroupKind, n: int, q: int, data: RationalFormData, variant: str) -> list[int]:
    """Predicted |Z| for every class with this data, one per (eigenvalue, distinct row length)."""
    out = []
    if kind is GroupKind.AFFINE:
        roots = [1]
    else:
        roots = list(range(1, q))
    for a in roots:
        phi = PolyDescriptor.linear(a)
        lam = data.get(phi)
        for k in sorted(set(lam.parts)):
            parts = list(lam.parts)
            parts.remove(k)
            lam_bar = Partition.from_parts(parts)
            rest = {psi: mu for psi, mu in data if psi != phi}
            if lam_bar.size():
                rest[phi] = lam_bar
            z = _gl_centralizer(RationalFormData.of(rest), q)
            scale = 1 if kind is GroupKind.AFFINE else q - 1
            out.append(z * scale * q ** _exponent(lam_bar, k, n, variant))
    return sorted(out)


@dataclass
class ClassInfo:
    representative: Matrix
    size: int
    centralizer: int
    data: RationalFormData


@dataclass
class CentralizerReport:
    kind: GroupKind
    n: int
    q: int
    classes: list[ClassInfo]
    matches: dict[str, bool] = field(default_factory=dict)
    mismatches: dict[str, list] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "group": self.kind.value,
            "n": self.n,
            "q": self.q,
            "classes": [
                {
                    "data": [[str(phi), lam.to_json()] for phi, lam in c.data],
                    "size": c.size,
                    "centralizer": c.centralizer,
                }
                for c in self.classes
            ],
            "matches": self.matches,
            "mismatches": {k: [[str(d), obs, pred] for d, obs, pred in v] for k, v in self.mismatches.items()},
        }


def conjugacy_classes(kind: GroupKind, n: int, q: int, cap: int = PAIR_CAP) -> list[ClassInfo]:
    order = kind.order(n, q)
    if order * order > cap:
        raise CapExceeded(f"|G|^2 = {order * order} exceeds cap {cap}")
    elems = list(enumerate_group(kind, n, q))
    inverses = [inverse(g, q) for g in elems]
    seen: set = set()
    classes = []
    for x in elems:
        if x in seen:
            continue
        orbit = {mat_mul(mat_mul(g, x, q), gi, q) for g, gi in zip(elems, inverses)}
        seen |= orbit
        commuting = sum(1 for g in elems if mat_mul(g, x, q) == mat_mul(x, g, q))
        if commuting * len(orbit) != order:
            raise AssertionError("orbit-stabilizer violated")
        classes.append(ClassInfo(x, len(orbit), commuting, rational_form_data(x, q)))
    return classes


def centralizer_census(kind: GroupKind, n: int, q: int, cap: int = PAIR_CAP) -> CentralizerReport:
    """Compare observed centralizer orders, grouped by GL data, with both candidate formulas."""
    if kind is GroupKind.GL:
        raise ValueError("centralizer census is defined for A and P")
    classes = conjugacy_classes(kind, n, q, cap)
    observed: dict[RationalFormData, list[int]] = defaultdict(list)
    for c in classes:
        observed[c.data].append(c.centralizer)
    report = CentralizerReport(kind, n, q, classes)
    for variant in VARIANTS:
        bad = []
        for data, obs in observed.items():
            pred = predicted_centralizers(kind, n, q, data, variant)
            if Counter(pred) != Counter(obs):
                bad.append((data, sorted(obs), pred))
        report.matches[variant] = not bad
        report.mismatches[variant] = bad
    return report
