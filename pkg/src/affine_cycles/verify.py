"""Named verification suites: each check reports exact values and a pass flag.

Suites: identities, measures, samplers, oracle, bounds.  The numbered
``criterion_*`` groups are what the acceptance tests run.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import identities
from .cycle_index import (
    GroupKind,
    Marker,
    bound_cyclic,
    bound_separable,
    cyclic_series,
    enumerate_form_data,
    fixed_space_limit,
    fixed_space_prob,
    joint_coefficient,
    limit_cyclic,
    limit_separable,
    restricted_mass,
    semisimple_limit_bounds,
    semisimple_limit_ratio_bounds,
    semisimple_series,
    separable_series,
    unipotent_rank_count,
)
from .exact import Series, euler_product_series, qcontext, to_decimal
from .measures import (
    MeasureParams,
    PolyDescriptor,
    Z_MINUS_ONE,
    affine_count,
    class_size_factor,
    gl_count,
    hall_littlewood_tail_bound,
    m_weight,
    markov_kernel,
    markov_path_weight,
    measure_M,
    measure_M_series,
    measure_N,
    measure_N_series,
    n_weight,
    parabolic_count,
)
from .partitions import Partition, enumerate_partitions, partitions_up_to
from . import samplers as smp
from .oracle.census import census, fixed_space_dim, is_cyclic, is_semisimple, is_separable, is_unipotent
from .oracle.centralizer import centralizer_census

SUITES = ("identities", "measures", "samplers", "oracle", "bounds")
ORACLE_CASES = ((1, 2), (2, 2), (3, 2), (1, 3), (2, 3))
DEFAULT_MAX_ORDER = 100_000
DEFAULT_SAMPLES = 100_000


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag} {self.name}" + (f": {self.detail}" if self.detail else "")


def _fmt(x: Fraction) -> str:
    return f"{x} ~ {to_decimal(x, 15)}"


@functools.lru_cache(maxsize=None)
def _census(kind: GroupKind, n: int, q: int):
    return census(kind, n, q)


# criterion 1: census counts against closed forms ----------------------------


def check_census_counts(kind: GroupKind, n: int, q: int) -> Check:
    ctx = qcontext(q)
    formula = affine_count if kind is GroupKind.AFFINE else parabolic_count
    rec = _census(kind, n, q)
    bad = [key for key, c in rec.counts.items() if formula(n, ctx, key) != c]
    # the formula must also vanish on every class the census never saw
    predicted_total = sum(formula(n, ctx, data) for data in enumerate_form_data(n + 1, ctx))
    ok = not bad and rec.total == kind.order(n, q) and predicted_total == rec.total
    return Check(
        f"census {kind.value}({n},{q}) matches closed-form counts",
        ok,
        f"{len(rec.counts)} classes, order {rec.total}, formula total {predicted_total}, mismatches {len(bad)}",
    )


def criterion_1() -> list[Check]:
    return [check_census_counts(k, n, q) for k in (GroupKind.AFFINE, GroupKind.PARABOLIC) for n, q in ORACLE_CASES]


# criterion 2: proportion series against census fractions ---------------------


def check_proportions(kind: GroupKind, n: int, q: int) -> Check:
    ctx = qcontext(q)
    rec = _census(kind, n, q)
    series = {
        "separable": (separable_series(kind, ctx, 6), is_separable),
        "cyclic": (cyclic_series(kind, ctx, 6), is_cyclic),
        "semisimple": (semisimple_series(kind, ctx, 6), is_semisimple),
    }
    parts, ok = [], True
    for name, (s, pred) in series.items():
        observed = rec.fraction_where(pred)
        ok &= observed == s[n]
        parts.append(f"{name} {observed} vs {s[n]}")
    return Check(f"proportions {kind.value}({n},{q})", ok, "; ".join(parts))


def criterion_2() -> list[Check]:
    out = []
    for kind in (GroupKind.AFFINE, GroupKind.GL):
        for n in (1, 2, 3):
            out.append(check_proportions(kind, n, 2))
    return out


# criterion 3: limits ------------------------------------------------------------


def criterion_3(tol: Fraction = Fraction(1, 10**12)) -> list[Check]:
    ctx2 = qcontext(2)
    s = limit_separable(GroupKind.AFFINE, ctx2)
    c = limit_cyclic(GroupKind.AFFINE, ctx2)
    out = [
        Check("s_A(inf,2) = 1/4", s == Fraction(1, 4), _fmt(s)),
        Check("c_A(inf,2) = 31/54", c == Fraction(31, 54), _fmt(c)),
    ]
    for q in (2, 3, 5):
        ctx = qcontext(q)
        v1, e1 = semisimple_limit_bounds(GroupKind.AFFINE, ctx, tol / 100)
        v2, e2 = semisimple_limit_ratio_bounds(ctx, tol / 100)
        gap = abs(v1 - v2)
        ok = gap <= tol and e1 + e2 <= tol and gap <= e1 + e2
        out.append(
            Check(
                f"ss_A(inf,{q}) product form vs ratio form",
                ok,
                f"{to_decimal(v1, 20)} vs {to_decimal(v2, 20)}, gap {float(gap):.2e}, error bounds {float(e1):.1e} + {float(e2):.1e}",
            )
        )
    return out


# criterion 4: identities ---------------------------------------------------------


def criterion_4() -> list[Check]:
    out = [Check("Euler product = sum form, bivariate to u^40", identities.check_euler_formal(40, 120))]
    for q in (2, 3, 5):
        ctx = qcontext(q)
        gap = identities.euler_numeric_gap(ctx, 40, 120)
        out.append(Check(f"Euler sum form vs 120-factor product, q={q}", gap < Fraction(1, 10**30), f"gap {float(gap):.1e}"))
        out.append(Check(f"prod_phi (1 - (u/q)^deg) = 1 - u, q={q}, order 30", identities.check_all_polynomials(ctx, 30)))
        out.append(Check(f"(1-u) C_A(u) = (1-u/q) S_A(u/q), q={q}, order 30", identities.check_wall_trick(ctx, 30)))
    out.append(Check("Rogers-Ramanujan first identity to t^40", identities.check_rogers_ramanujan(0, 40)))
    out.append(Check("Rogers-Ramanujan second identity to t^40", identities.check_rogers_ramanujan(1, 40)))
    return out


def extra_identities() -> list[Check]:
    out = []
    for q in (2, 3):
        ctx = qcontext(q)
        out.append(Check(f"S_A (1 + u/(q-1)) = S_GL, q={q}", identities.check_separable_ratio(ctx, 30)))
        for kind in GroupKind:
            total = joint_coefficient(kind, ctx, 12, Marker())
            out.append(Check(f"unmarked cycle index of {kind.value} is 1/(1-u), q={q}", total == Series([1] * 13, 12)))
    out.extend(check_mixture_law())
    return out


def check_mixture_law(order: int = 10) -> list[Check]:
    """Marking slots factorizes the cycle index into independent N and M pieces."""
    out = []
    ctx = qcontext(3)
    E = euler_product_series(ctx, order)
    geo = Series.geometric(1, order)
    for mu in (Partition.from_parts([1]), Partition.from_parts([2, 1]), Partition.from_parts([1, 1])):
        for nu in (Partition(()), Partition.from_parts([1]), Partition.from_parts([2])):
            want_n = Series.monomial((ctx.power(mu.column(1)) - 1) / class_size_factor(ctx, 1, mu), mu.size() - 1, order)
            marker = Marker(linear={1: lambda lam, mu=mu: int(lam == mu), 2: lambda lam, nu=nu: int(lam == nu)})
            got = joint_coefficient(GroupKind.AFFINE, ctx, order, marker)
            want_m = Series.monomial(1 / class_size_factor(ctx, 1, nu), nu.size(), order)
            want = want_n * want_m * E * E * geo
            out.append(Check(f"A cycle index marked at z-1={mu.parts}, z-2={nu.parts} factorizes", got == want))
    # one marked slot, and the limit of its coefficients is N_{1,q}
    mu = Partition.from_parts([2, 1])
    got = joint_coefficient(GroupKind.AFFINE, ctx, 20, Marker.on_z_minus_one(lambda lam: int(lam == mu)))
    want = Series.monomial((ctx.power(2) - 1) / class_size_factor(ctx, 1, mu), 2, 20) * euler_product_series(ctx, 20) / Series([1, -1], 20)
    lim = measure_N(MeasureParams.of(1, 3), mu)
    out.append(
        Check(
            "P_n(lambda_{z-1} = (2,1)) series equals u^2 weight * E(u)/(1-u), coefficients tend to N_{1,3}",
            got == want and abs(got[20] - lim) < Fraction(1, 10**8),
            f"coefficient 20 = {float(got[20]):.12f}, N_1,3 = {float(lim):.12f}",
        )
    )
    return out


# criterion 5: measures ------------------------------------------------------------


def criterion_5() -> list[Check]:
    out = []
    bad12, worst3, worst_tail = 0, Fraction(0), Fraction(0)
    for q in (2, 3, 4):
        ctx = qcontext(q)
        for d in (1, 2):
            for lam in partitions_up_to(8):
                f1 = class_size_factor(ctx, d, lam, form=1)
                f2 = class_size_factor(ctx, d, lam, form=2)
                f3 = class_size_factor(ctx, d, lam, form=3, variables=60)
                bad12 += f1 != f2
                worst3 = max(worst3, abs(f3 - f2) / f2)
                if lam.size():
                    worst_tail = max(worst_tail, hall_littlewood_tail_bound(lam, 1 / ctx.extension(d).q, 60))
    out.append(Check("class size forms 1 and 2 agree exactly, |lam| <= 8, q in {2,3,4}, d in {1,2}", bad12 == 0))
    out.append(
        Check(
            "class size form 3 (Hall-Littlewood, 60 variables) agrees to 1e-15",
            worst3 < Fraction(1, 10**15) and worst_tail < Fraction(1, 10**15),
            f"worst relative gap {float(worst3):.1e}, worst tail bound {float(worst_tail):.1e}",
        )
    )
    p = MeasureParams.of(Fraction(1, 2), 2)
    total = sum((n_weight(p, lam) for lam in partitions_up_to(30) if lam.size()), Fraction(0)) * p.prefactor
    out.append(Check("sum of N_{1/2,2} over |lam| <= 30 within 1e-6 of 1", abs(1 - total) < Fraction(1, 10**6), f"1 - sum = {float(1 - total):.2e}"))
    ok = True
    ctx = p.ctx
    for lam in partitions_up_to(12):
        if not lam.size():
            continue
        ratio = (ctx.power(lam.column(1)) - 1) / p.u
        ok &= n_weight(p, lam) == ratio * m_weight(p, lam)
        ok &= measure_N(p, lam) == ratio * measure_M(p, lam)
        mn = measure_N_series(ctx, lam, 14)
        mm = measure_M_series(ctx, lam, 14)
        ok &= mn.shift(1) == mm * (ctx.power(lam.column(1)) - 1)
    out.append(Check("N = (q^{lam'_1} - 1)/u * M exactly, |lam| <= 12 (numeric and as series in u)", ok))
    return out


# criterion 6: Markov chain ----------------------------------------------------------


def criterion_6() -> list[Check]:
    path_ok, rows_ok = True, True
    for u in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        for q in (2, 3):
            p = MeasureParams.of(u, q)
            for lam in partitions_up_to(6):
                if lam.size():
                    path_ok &= markov_path_weight(p, lam) == n_weight(p, lam)
            for a in range(13):
                rows_ok &= sum((markov_kernel(p, a, b) for b in range(a + 1)), Fraction(0)) == 1
    return [
        Check("Q(lam'_1) prod K(lam'_i, lam'_{i+1}) = N_{u,q}(lam), |lam| <= 6, u in {1/4,1/2,3/4}, q in {2,3}", path_ok),
        Check("Markov kernel rows sum to 1 exactly, a <= 12", rows_ok),
    ]


# criterion 7: samplers ---------------------------------------------------------------


def exact_law(measure: Callable, p: MeasureParams, max_size: int = 10, start: int = 0) -> dict[Partition, Fraction]:
    return {lam: measure(p, lam) for k in range(start, max_size + 1) for lam in enumerate_partitions(k)}


def conditional_target(n: int, q: int) -> dict[Partition, Fraction]:
    p = MeasureParams.of(Fraction(1, 2), q)
    ws = {lam: n_weight(p, lam) for lam in enumerate_partitions(n + 1)}
    total = sum(ws.values())
    return {lam: w / total for lam, w in ws.items()}


def _tv_check(name: str, draw: Callable, exact: dict, samples: int, seed: int, tol: float = 0.01) -> Check:
    rng = smp.RandomStream(seed)
    counts = Counter(draw(rng) for _ in range(samples))
    tv = smp.total_variation(counts, exact, samples)
    return Check(name, tv < tol, f"TV {tv:.4f} over {samples} samples (seed {seed})")


def criterion_7(samples: int = DEFAULT_SAMPLES) -> list[Check]:
    p = MeasureParams.of(Fraction(1, 2), 2)
    law_m = exact_law(measure_M, p)
    law_n = exact_law(measure_N, p, start=1)
    out = [
        _tv_check("tableau sampler vs M_{1/2,2}", lambda r: smp.sample_M_yta(p, r).partition, law_m, samples, 11),
        _tv_check("terminating sampler vs M_{1/2,2}", lambda r: smp.sample_M_terminating(p, r).partition, law_m, samples, 12),
        _tv_check("affine sampler vs N_{1/2,2}", lambda r: smp.sample_N_affine(p, r).partition, law_n, samples, 13),
        _tv_check("Markov sampler vs N_{1/2,2}", lambda r: smp.sample_N_markov(p, r), law_n, samples, 14),
    ]
    for n in (2, 3):
        out.append(
            _tv_check(
                f"size-conditioned sampler vs N given |lam| = {n + 1}",
                lambda r, n=n: smp.sample_N_given_size(n, p.ctx, r).partition,
                conditional_target(n, 2),
                samples,
                15 + n,
            )
        )
    return out


def extra_samplers(samples: int = DEFAULT_SAMPLES) -> list[Check]:
    out = []
    ctx = qcontext(2)
    for n in (1, 2, 3):
        law = smp.conditional_law(n, ctx)
        gap = max(abs(law.get(lam, 0) - v) for lam, v in conditional_target(n, 2).items())
        out.append(Check(f"exact law of the size-conditioned sampler equals N given |lam| = {n + 1}", gap < Fraction(1, 10**12), f"gap {float(gap):.1e}"))
    for u in (Fraction(1, 4), Fraction(3, 4)):
        p = MeasureParams.of(u, 2)
        ws = {lam: n_weight(p, lam) for lam in enumerate_partitions(4)}
        total = sum(ws.values())
        ok = all(ws[lam] / total == v for lam, v in conditional_target(3, 2).items())
        out.append(Check(f"N_{{u,2}} given |lam| = 4 does not depend on u (u = {u})", ok))
    out.append(check_gap_statistics(samples))
    p = MeasureParams.of(Fraction(1, 2), 2)
    ok = True
    for k in range(7):
        for lam in enumerate_partitions(k):
            paths = _all_paths(lam)
            ok &= sum((smp.yta_path_probability(p, t) for t in paths), Fraction(0)) == measure_M(p, lam)
    out.append(Check("M_{1/2,2}(lam) = prefactor * sum over tableaux of edge-weight products, |lam| <= 6", ok))
    return out


def _all_paths(lam: Partition) -> list[smp.TableauPath]:
    """Every standard tableau of shape lam, as column sequences."""
    from .partitions import removable_columns, remove_from_column

    if not lam.size():
        return [smp.TableauPath((), lam)]
    out = []
    for s in removable_columns(lam):
        for t in _all_paths(remove_from_column(lam, s)):
            out.append(smp.TableauPath(t.columns + (s,), lam))
    return out


def check_gap_statistics(samples: int = DEFAULT_SAMPLES, k: int = 2, seed: int = 21) -> Check:
    """Given k rows, the gaps h_1..h_k are independent geometric with ratios u/q^m."""
    p = MeasureParams.of(Fraction(1, 2), 2)
    rng = smp.RandomStream(seed)
    joint: Counter = Counter()
    hits = 0
    for _ in range(samples):
        t = smp.sample_N_affine(p, rng)
        if t.partition.column(1) == k:
            joint[tuple(t.gaps())] += 1
            hits += 1
    ratios = [p.u / p.q**m for m in range(1, k + 1)]
    exact = {}
    for hs in joint:
        pr = Fraction(1)
        for h, x in zip(hs, ratios):
            pr *= (1 - x) * x**h
        exact[hs] = pr
    # include unseen small cells so missing mass counts against the fit
    for h1 in range(6):
        for h2 in range(4):
            hs = (h1, h2)
            exact.setdefault(hs, (1 - ratios[0]) * ratios[0] ** h1 * (1 - ratios[1]) * ratios[1] ** h2)
    tv = smp.total_variation(joint, exact, hits)
    return Check(f"gap statistics given {k} rows are independent geometric", tv < 0.015, f"TV {tv:.4f} over {hits} conditioned samples")


# criterion 8: fixed space and unipotents ------------------------------------------


def criterion_8() -> list[Check]:
    sums_ok = all(sum(fixed_space_prob(n, k, qcontext(q)) for k in range(1, n + 2)) == 1 for n in range(7) for q in (2, 3))
    ctx2 = qcontext(2)
    rec = _census(GroupKind.AFFINE, 1, 2)
    hist = rec.fixed_space_histogram()
    brute = (Fraction(hist.get(1, 0), rec.total), Fraction(hist.get(2, 0), rec.total))
    formula = (fixed_space_prob(1, 1, ctx2), fixed_space_prob(1, 2, ctx2))
    steinberg = all(sum(unipotent_rank_count(n, k, qcontext(q)) for k in range(1, n + 2)) == q ** (n * n) for n in range(6) for q in (2, 3))
    rec3 = _census(GroupKind.AFFINE, 3, 2)
    observed = rec3.unipotent_by_fixed_space()
    predicted = {k: unipotent_rank_count(3, k, ctx2) for k in range(1, 5)}
    return [
        Check("sum_k P_{A,n}(k,q) = 1, n <= 6, q in {2,3}", sums_ok),
        Check("P_{A,1}(.,2) = (1/2, 1/2) matches A(1,2) census", brute == formula == (Fraction(1, 2), Fraction(1, 2)), f"census {brute}, formula {formula}"),
        Check("unipotent counts by fixed-space dimension sum to q^{n^2}, n <= 5, q in {2,3}", steinberg),
        Check("unipotent counts match the A(3,2) census by fixed-space dimension", observed == {k: v for k, v in predicted.items() if v}, f"census {observed}, formula {predicted}"),
    ]


def extra_measures() -> list[Check]:
    out = []
    for q in (2, 3):
        ctx = qcontext(q)
        lims = [fixed_space_limit(k, ctx) for k in range(1, 12)]
        out.append(Check(f"P_{{A,inf}}(k,{q}) sums to 1", abs(sum(lims) - 1) < Fraction(1, 10**20)))
        p = MeasureParams.of(1, q)
        gap = max(abs(restricted_mass(k, p) - fixed_space_limit(k, ctx)) for k in range(1, 8))
        out.append(Check(f"N_{{1,{q}}} mass on lam'_1 = k equals P_{{A,inf}}(k,{q})", gap < Fraction(1, 10**25)))
    p = MeasureParams.of(Fraction(1, 2), 2)
    sums: dict[int, Fraction] = {}
    for lam in partitions_up_to(30):
        if lam.size():
            sums[lam.column(1)] = sums.get(lam.column(1), Fraction(0)) + measure_N(p, lam)
    gap = max(abs(sums[k] - restricted_mass(k, p)) for k in range(1, 5))
    out.append(Check("partial sums over lam'_1 = k, |lam| <= 30, approach the closed form", gap < Fraction(1, 10**6), f"gap {float(gap):.1e}"))
    return out


# criterion 9: convergence bounds --------------------------------------------------


def criterion_9() -> list[Check]:
    out = []
    for q in (2, 3, 5):
        ctx = qcontext(q)
        c = cyclic_series(GroupKind.AFFINE, ctx, 25)
        s = separable_series(GroupKind.AFFINE, ctx, 25)
        lc, ls = limit_cyclic(GroupKind.AFFINE, ctx), limit_separable(GroupKind.AFFINE, ctx)
        worst_c = max(abs(c[n] - lc) / bound_cyclic(n, ctx) for n in range(26))
        worst_s = max(abs(s[n] - ls) / bound_separable(n, ctx) for n in range(26))
        out.append(Check(f"|c_A(n,{q}) - c_A(inf,{q})| <= 1/(q^(n+1)(1-1/q)), n <= 25", worst_c <= 1, f"worst ratio {float(worst_c):.3f}"))
        out.append(Check(f"|s_A(n,{q}) - s_A(inf,{q})| <= separable bound (K+ with k = 1), n <= 25", worst_s <= 1, f"worst ratio {float(worst_s):.3f}"))
    return out


def extra_bounds() -> list[Check]:
    out = []
    for q in (2, 3, 5):
        ctx = qcontext(q)
        for kind in (GroupKind.AFFINE, GroupKind.GL):
            s = separable_series(kind, ctx, 30)
            c = cyclic_series(kind, ctx, 30)
            ss = semisimple_series(kind, ctx, 30)
            inside = all(0 <= x <= 1 for x in list(s) + list(c) + list(ss))
            sandwich = all(s[n] <= ss[n] <= s[n] + (1 - c[n]) for n in range(31))
            out.append(Check(f"{kind.value} proportions at q={q} lie in [0,1] and s <= ss <= s + (1 - c)", inside and sandwich))
        ss_lim = semisimple_limit_bounds(GroupKind.AFFINE, ctx)[0]
        ss30 = semisimple_series(GroupKind.AFFINE, ctx, 30)[30]
        out.append(Check(f"ss_A(30,{q}) is close to ss_A(inf,{q})", abs(ss30 - ss_lim) < Fraction(1, 10**6), f"{float(ss30):.12f} vs {float(ss_lim):.12f}"))
    for q in (2, 3, 5):
        ctx = qcontext(q)
        bc = [bound_cyclic(n, ctx) for n in range(26)]
        out.append(Check(f"cyclic bound decreases in n, q={q}", all(a > b for a, b in zip(bc, bc[1:]))))
    return out


# oracle extras -------------------------------------------------------------------


def extra_oracle(max_order: int = DEFAULT_MAX_ORDER) -> list[Check]:
    out = []
    for n in (1, 2, 3):
        for q in (2, 3):
            if GroupKind.GL.order(n, q) > max_order:
                continue
            ctx = qcontext(q)
            rec = _census(GroupKind.GL, n, q)
            ok = all(gl_count(n, ctx, key) == c for key, c in rec.counts.items()) and rec.total == GroupKind.GL.order(n, q)
            classes = sum(1 for _ in enumerate_form_data(n, ctx))
            out.append(Check(f"census GL({n},{q}) matches class sizes; {len(rec.counts)} classes", ok and classes == len(rec.counts)))
    for kind in (GroupKind.AFFINE, GroupKind.PARABOLIC):
        for n, q in ORACLE_CASES:
            if kind.order(n, q) > max_order:
                continue
            rec = _census(kind, n, q)
            uni = rec.count_where(is_unipotent)
            out.append(Check(f"{kind.value}({n},{q}) has q^(n^2) unipotent elements", uni == q ** (n * n), f"{uni}"))
    # marginal of lambda_{z-1} in P(2,3) against the marked cycle index
    ctx = qcontext(3)
    rec = _census(GroupKind.PARABOLIC, 2, 3)
    marg = rec.marginal(Z_MINUS_ONE)
    ok = True
    for lam, c in marg.items():
        s = joint_coefficient(GroupKind.PARABOLIC, ctx, 2, Marker.on_z_minus_one(lambda mu, lam=lam: int(mu == lam)))
        ok &= s[2] == Fraction(c, rec.total)
    out.append(Check("P(2,3) marginal law of lambda_{z-1} equals the marked cycle index", ok, f"{len(marg)} partitions"))
    out.append(check_fixed_space_marginal())
    for kind, n, q in ((GroupKind.AFFINE, 2, 2), (GroupKind.AFFINE, 1, 3), (GroupKind.AFFINE, 2, 3), (GroupKind.PARABOLIC, 2, 3)):
        rep = centralizer_census(kind, n, q)
        out.append(
            Check(
                f"{kind.value}({n},{q}) centralizer orders match the formula with sum over i >= k",
                rep.matches["corrected"],
                f"{len(rep.classes)} classes; printed range i <= n-k matches: {rep.matches['printed']}",
            )
        )
    return out


def check_fixed_space_marginal(n: int = 3, q: int = 2, tol: Fraction = Fraction(2, 100)) -> Check:
    """Finite-n census law of lam'_{z-1,1} against its n = infinity value under N_{1,q}."""
    rec = _census(GroupKind.AFFINE, n, q)
    p = MeasureParams.of(1, q)
    hist = rec.fixed_space_histogram()
    gap = max(abs(Fraction(hist.get(k, 0), rec.total) - restricted_mass(k, p)) for k in range(1, n + 3))
    return Check(f"A({n},{q}) law of lambda'_{{z-1,1}} within {float(tol)} of its N_{{1,{q}}} limit", gap < tol, f"max gap {float(gap):.4f}")


def substitutes() -> list[Check]:
    """Finite stand-ins for the n -> infinity statements: factorization and census marginals."""
    return check_mixture_law() + [check_fixed_space_marginal()]


# suites ----------------------------------------------------------------------------


def run_suite(name: str, max_order: int = DEFAULT_MAX_ORDER, samples: int = DEFAULT_SAMPLES) -> list[Check]:
    if name == "identities":
        return criterion_4() + extra_identities()
    if name == "measures":
        return criterion_5() + criterion_6() + extra_measures()
    if name == "samplers":
        return criterion_7(samples) + extra_samplers(samples)
    if name == "oracle":
        checks = []
        for kind in (GroupKind.AFFINE, GroupKind.PARABOLIC):
            for n, q in ORACLE_CASES:
                if kind.order(n, q) <= max_order:
                    checks.append(check_census_counts(kind, n, q))
        checks.extend(c for c in criterion_2())
        checks.extend(criterion_8())
        return checks + extra_oracle(max_order)
    if name == "bounds":
        return criterion_3() + criterion_9() + extra_bounds()
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def run(names: Iterable[str], max_order: int = DEFAULT_MAX_ORDER, samples: int = DEFAULT_SAMPLES) -> list[Check]:
    out = []
    for name in names:
        out.extend(run_suite(name, max_order, samples))
    return out
