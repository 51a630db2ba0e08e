"""Chi-square helpers for comparing sampled counts."""

from __future__ import annotations

import math
from statistics import NormalDist


def chi2_critical(df: int, alpha: float = 1e-3) -> float:
    """Upper alpha quantile of chi-square(df), Wilson-Hilferty approximation."""
    z = NormalDist().inv_cdf(1 - alpha)
    c = 2 / (9 * df)
    return df * (1 - c + z * math.sqrt(c)) ** 3


def pool_rare(cells: dict, expected_min: float) -> dict:
    """Merge cells whose weight falls below expected_min into one "other" cell."""
    out: dict = {}
    for key, w in cells.items():
        k = key if w >= expected_min else "other"
        out[k] = out.get(k, 0) + w
    return out


def two_sample_chi2(a: dict, b: dict, min_count: int = 10) -> tuple[float, int]:
    """Homogeneity statistic and degrees of freedom for two count tables."""
    na, nb = sum(a.values()), sum(b.values())
    keys = set(a) | set(b)
    merged = {k: a.get(k, 0) + b.get(k, 0) for k in keys}
    big = {k for k, v in merged.items() if v >= min_count}
    fold = lambda t: {**{k: t.get(k, 0) for k in big}, "other": sum(v for k, v in t.items() if k not in big)}
    a, b = fold(a), fold(b)
    k1, k2 = math.sqrt(nb / na), math.sqrt(na / nb)
    stat, cells = 0.0, 0
    for k in a:
        tot = a[k] + b[k]
        if tot:
            stat += (k1 * a[k] - k2 * b[k]) ** 2 / tot
            cells += 1
    return stat, cells - 1


def goodness_of_fit_chi2(counts: dict, probs: dict, min_expected: float = 5.0) -> tuple[float, int]:
    """Pearson statistic of counts against exact probabilities (rare cells pooled)."""
    n = sum(counts.values())
    expected = pool_rare({k: float(p) * n for k, p in probs.items()}, min_expected)
    observed: dict = {}
    for k, c in counts.items():
        key = k if k in expected else "other"
        observed[key] = observed.get(key, 0) + c
    expected.setdefault("other", max(0.0, n - sum(v for k, v in expected.items() if k != "other")))
    stat = sum((observed.get(k, 0) - e) ** 2 / e for k, e in expected.items() if e > 0)
    return stat, len(expected) - 1
