from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affine_cycles.cycle_index import enumerate_form_data
from affine_cycles.exact import affine_order, gl_order, parabolic_order, qcontext
from affine_cycles.measures import (
    MeasureParams,
    PolyDescriptor,
    RationalFormData,
    Z_MINUS_ONE,
    affine_count,
    class_size_factor,
    hall_littlewood_principal,
    hall_littlewood_tail_bound,
    m_weight,
    markov_initial,
    markov_initial_weight,
    markov_kernel,
    markov_path_weight,
    measure_M,
    measure_N,
    n_weight,
    parabolic_count,
)
from affine_cycles.partitions import Partition, n_stat, partitions_up_to

P = Partition
Z2 = PolyDescriptor.linear(2)


def test_class_size_of_the_identity_in_gl1():
    ctx = qcontext(2)
    assert class_size_factor(ctx, 1, P((1,))) == 1
    assert gl_order(1, 2) / class_size_factor(ctx, 1, P((1,))) == 1


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_scalar_class_is_central(q, n):
    ctx = qcontext(q)
    for form in (1, 2):
        assert class_size_factor(ctx, 1, P((1,) * n), form=form) == gl_order(n, q)


def test_empty_partition_factor_is_one():
    ctx = qcontext(3)
    for form in (1, 2, 3):
        assert class_size_factor(ctx, 2, P(()), form=form) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_three_forms_agree_small(q):
    ctx = qcontext(q)
    for d in (1, 2):
        for lam in partitions_up_to(5):
            f2 = class_size_factor(ctx, d, lam, form=2)
            assert class_size_factor(ctx, d, lam, form=1) == f2
            f3 = class_size_factor(ctx, d, lam, form=3, variables=40)
            assert abs(f3 - f2) / f2 < Fraction(1, 10**9)


def test_hall_littlewood_one_box():
    t = Fraction(1, 3)
    for m in (1, 2, 5):
        assert hall_littlewood_principal(P((1,)), t, m) == sum(t**i for i in range(1, m + 1))


def test_hall_littlewood_empty_and_too_few_variables():
    assert hall_littlewood_principal(P(()), Fraction(1, 2), 3) == 1
    with pytest.raises(ValueError):
        hall_littlewood_principal(P((1, 1, 1)), Fraction(1, 2), 2)
    with pytest.raises(ValueError):
        hall_littlewood_principal(P((1,)), Fraction(3, 2), 2)


def test_hall_littlewood_is_monotone_in_variables():
    lam = P((2, 1))
    t = Fraction(1, 2)
    vals = [hall_littlewood_principal(lam, t, m) for m in range(2, 12)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] - vals[0] <= hall_littlewood_tail_bound(lam, t, 2)


def test_hall_littlewood_form_matches_at_half():
    ctx = qcontext(2)
    t = Fraction(1, 2)
    for lam in partitions_up_to(6):
        if not lam:
            continue
        # form 3 is q^{n(lam)} / P_lam over 40 variables; form 2 is exact
        scale = Fraction(2) ** n_stat(lam)
        full = scale / class_size_factor(ctx, 1, lam, form=2)
        truncated = scale / class_size_factor(ctx, 1, lam, form=3, variables=40)
        assert truncated == hall_littlewood_principal(lam, t, 40)
        assert 0 <= full - truncated <= hall_littlewood_tail_bound(lam, t, 40)


def test_measure_M_examples():
    p = MeasureParams.of(1, 2)
    assert measure_M(p, P(())) == p.prefactor
    assert measure_M(p, P((1,))) == p.prefactor
    assert abs(float(p.prefactor) - 0.288788095) < 1e-9
    assert 1 / m_weight(p, P((2,))) == 2
    assert 1 / m_weight(p, P((1, 1))) == 6


def test_measure_N_examples():
    for u, q in ((Fraction(1, 2), 2), (Fraction(1, 3), 3), (1, 5)):
        p = MeasureParams.of(u, q)
        assert measure_N(p, P((1,))) == p.prefactor
        for j in range(1, 8):
            assert measure_N(p, P((j,))) == p.prefactor * (p.u / p.q) ** (j - 1)
    with pytest.raises(ValueError):
        measure_N(MeasureParams.of(Fraction(1, 2), 2), P(()))


def test_measure_params_range():
    with pytest.raises(ValueError):
        MeasureParams.of(0, 2)
    with pytest.raises(ValueError):
        MeasureParams.of(Fraction(3, 2), 2)
    assert MeasureParams.of(1, 2).u == 1


def test_N_is_rescaled_M():
    p = MeasureParams.of(Fraction(2, 3), 3)
    for lam in partitions_up_to(8):
        if lam:
            assert n_weight(p, lam) == (p.ctx.power(lam.column(1)) - 1) / p.u * m_weight(p, lam)


def test_M_and_N_are_probability_measures():
    p = MeasureParams.of(Fraction(1, 2), 2)
    total_m = sum((m_weight(p, lam) for lam in partitions_up_to(24)), Fraction(0)) * p.prefactor
    total_n = sum((n_weight(p, lam) for lam in partitions_up_to(24) if lam), Fraction(0)) * p.prefactor
    assert abs(1 - total_m) < Fraction(1, 10**6)
    assert abs(1 - total_n) < Fraction(1, 10**6)


def test_affine_count_examples():
    ctx = qcontext(2)
    assert affine_count(1, ctx, RationalFormData.of({Z_MINUS_ONE: (1, 1)})) == 1
    assert affine_count(1, ctx, RationalFormData.of({Z_MINUS_ONE: (2,)})) == 1
    ctx3 = qcontext(3)
    assert affine_count(1, ctx3, RationalFormData.of({Z2: (1, 1)})) == 0
    with pytest.raises(ValueError):
        affine_count(2, ctx, RationalFormData.of({Z_MINUS_ONE: (1,)}))


def _p13_brute() -> dict:
    """Elements [[a, v], [0, m]] of P(1,3), keyed by rational canonical form data by hand."""
    out: dict = {}
    for a in (1, 2):
        for m in (1, 2):
            for v in range(3):
                if a != m:
                    key = RationalFormData.of({PolyDescriptor.linear(a): (1,), PolyDescriptor.linear(m): (1,)})
                elif v:
                    key = RationalFormData.of({PolyDescriptor.linear(a): (2,)})
                else:
                    key = RationalFormData.of({PolyDescriptor.linear(a): (1, 1)})
                out[key] = out.get(key, 0) + 1
    return out


def test_parabolic_count_matches_hand_census_of_p13():
    ctx = qcontext(3)
    brute = _p13_brute()
    assert sum(brute.values()) == parabolic_order(1, 3) == 12
    assert brute[RationalFormData.of({Z_MINUS_ONE: (2,)})] == 2
    for key, c in brute.items():
        assert parabolic_count(1, ctx, key) == c


def test_parabolic_equals_affine_at_q2():
    ctx = qcontext(2)
    for n in (1, 2, 3):
        for data in enumerate_form_data(n + 1, ctx):
            assert parabolic_count(n, ctx, data) == affine_count(n, ctx, data)


@pytest.mark.parametrize("q", [2, 3])
def test_counts_sum_to_group_orders(q):
    ctx = qcontext(q)
    for n in (1, 2, 3):
        data = list(enumerate_form_data(n + 1, ctx))
        assert sum(affine_count(n, ctx, d) for d in data) == affine_order(n, q)
        if n <= 2:
            assert sum(parabolic_count(n, ctx, d) for d in data) == parabolic_order(n, q)


def test_markov_kernel_small_cases():
    p = MeasureParams.of(Fraction(1, 2), 3)
    assert markov_kernel(p, 1, 0) == 1 - p.u / p.q
    assert markov_kernel(p, 1, 1) == p.u / p.q
    assert markov_kernel(p, 0, 0) == 1
    assert markov_kernel(p, 2, 3) == 0
    with pytest.raises(ValueError):
        markov_initial_weight(p, 0)


def test_markov_initial_law_sums_to_one():
    p = MeasureParams.of(Fraction(1, 2), 2)
    total = sum(markov_initial(p, a) for a in range(1, 26))
    # Q(a) decays faster than q^{-(a^2 - a)}, so the omitted tail is tiny
    assert abs(1 - total) < Fraction(1, 10**25)


rationals_in_unit = st.fractions(min_value=0, max_value=1, max_denominator=50).filter(lambda x: 0 < x)
q_values = st.fractions(min_value=1, max_value=9, max_denominator=5).filter(lambda x: x > 1)


@settings(max_examples=40, deadline=None)
@given(rationals_in_unit, q_values, st.integers(0, 12))
def test_markov_rows_sum_to_one(u, q, a):
    p = MeasureParams.of(u, q)
    assert sum(markov_kernel(p, a, b) for b in range(a + 1)) == 1


def test_markov_path_weight_is_N():
    for u in (Fraction(1, 4), Fraction(3, 4)):
        p = MeasureParams.of(u, 3)
        for lam in partitions_up_to(5):
            if lam:
                assert markov_path_weight(p, lam) == n_weight(p, lam)


def test_rational_form_data_validation():
    with pytest.raises(ValueError):
        PolyDescriptor(0)
    with pytest.raises(ValueError):
        PolyDescriptor(1, "z")
    with pytest.raises(ValueError):
        PolyDescriptor.linear(0)
    data = RationalFormData.of({Z_MINUS_ONE: (2, 1), PolyDescriptor(2, "poly:1,1,1"): (1,), Z2: ()})
    assert data.dimension == 5
    assert len(data) == 2
    assert data.get(Z2) == P(())
