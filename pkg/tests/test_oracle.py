from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from affine_cycles.cycle_index import GroupKind, count_irreducibles, enumerate_form_data
from affine_cycles.exact import gl_order, qcontext
from affine_cycles.measures import Z_MINUS_ONE, affine_count, class_size_factor, gl_count, parabolic_count
from affine_cycles.oracle import census as cen
from affine_cycles.oracle.centralizer import centralizer_census, conjugacy_classes, predicted_centralizers
from affine_cycles.oracle.field import CapExceeded, OracleError, irreducible_polys, poly_mul
from affine_cycles.oracle.groups import embed, enumerate_group
from affine_cycles.oracle.matrix import charpoly, identity, inverse, is_invertible, mat_mul, rank
from affine_cycles.partitions import Partition

P = Partition


def random_invertible(n: int, p: int, rng: random.Random):
    while True:
        m = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
        if is_invertible(m, p):
            return m


def sympy_charpoly(m, p: int) -> tuple[int, ...]:
    """Ascending coefficients of det(zI - m) mod p, via sympy."""
    z = sympy.Symbol("z")
    poly = sympy.Matrix(m).charpoly(z)
    return tuple(int(c) % p for c in reversed(poly.all_coeffs()))


def test_irreducibles_over_f2():
    assert set(irreducible_polys(2, 1)) == {(0, 1), (1, 1)}
    assert list(irreducible_polys(2, 2)) == [(1, 1, 1)]


@pytest.mark.parametrize("p, top", [(2, 8), (3, 8), (5, 6)])
def test_irreducible_counts_match_necklace_formula(p, top):
    for d in range(1, top + 1):
        assert len(irreducible_polys(p, d)) == count_irreducibles(qcontext(p), d)


def test_irreducibles_against_sympy():
    z = sympy.Symbol("z")
    for p, d in ((2, 4), (3, 3), (5, 2)):
        found = set(irreducible_polys(p, d))
        for tail in itertools.product(range(p), repeat=d):
            f = tuple(tail) + (1,)
            expected = sympy.Poly(list(reversed(f)), z, modulus=p).is_irreducible
            assert (f in found) == expected, f


def test_products_of_irreducibles_are_reducible():
    a, b = irreducible_polys(3, 1)[1], irreducible_polys(3, 2)[0]
    assert poly_mul(a, b, 3) not in irreducible_polys(3, 3)


def test_rank_and_inverse():
    rng = random.Random(5)
    for _ in range(50):
        m = random_invertible(4, 5, rng)
        assert rank(m, 5) == 4
        assert mat_mul(m, inverse(m, 5), 5) == identity(4)
    assert rank(((1, 2), (2, 4)), 5) == 1


def test_charpoly_against_sympy():
    rng = random.Random(11)
    for p in (2, 3, 5):
        for n in (1, 2, 3, 4, 5):
            for _ in range(6):
                m = tuple(tuple(rng.randrange(p) for _ in range(n)) for _ in range(n))
                assert charpoly(m, p) == sympy_charpoly(m, p)


@pytest.mark.parametrize("n, p", [(1, 2), (3, 2), (4, 3), (2, 5)])
def test_identity_has_all_ones_column(n, p):
    assert cen.rational_form_data(identity(n), p) == cen.RationalFormData.of({Z_MINUS_ONE: (1,) * n})


@pytest.mark.parametrize("n, p", [(2, 2), (3, 3), (4, 2), (4, 5)])
def test_elementary_reflection(n, p):
    m = [list(r) for r in identity(n)]
    m[0][1] = p - 1
    data = cen.rational_form_data(tuple(map(tuple, m)), p)
    assert data == cen.RationalFormData.of({Z_MINUS_ONE: (2,) + (1,) * (n - 2)})


def test_singular_matrix_rejected():
    with pytest.raises(OracleError):
        cen.rational_form_data(((1, 0), (0, 0)), 3)


def test_charpoly_from_data_on_random_gl43():
    rng = random.Random(2024)
    for i in range(500):
        m = random_invertible(4, 3, rng)
        data = cen.rational_form_data(m, 3)
        assert data.dimension == 4
        assert cen.charpoly_from_data(data, 3) == charpoly(m, 3)
        if i < 60:
            assert charpoly(m, 3) == sympy_charpoly(m, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_data_is_a_conjugacy_invariant(seed):
    rng = random.Random(seed)
    m = random_invertible(4, 3, rng)
    g = random_invertible(4, 3, rng)
    conj = mat_mul(mat_mul(g, m, 3), inverse(g, 3), 3)
    assert cen.rational_form_data(conj, 3) == cen.rational_form_data(m, 3)


@pytest.mark.parametrize(
    "kind, n, p, order",
    [
        (GroupKind.AFFINE, 1, 2, 2),
        (GroupKind.AFFINE, 2, 2, 24),
        (GroupKind.AFFINE, 3, 2, 1344),
        (GroupKind.PARABOLIC, 2, 3, 864),
        (GroupKind.GL, 2, 3, 48),
        (GroupKind.GL, 3, 2, 168),
    ],
)
def test_group_sizes(kind, n, p, order):
    elems = list(enumerate_group(kind, n, p))
    assert len(elems) == len(set(elems)) == order == kind.order(n, p)
    for g in elems:
        assert is_invertible(g, p)
        if kind is not GroupKind.GL:
            assert all(row[0] == 0 for row in g[1:])
            assert g[0][0] != 0
            if kind is GroupKind.AFFINE:
                assert g[0][0] == 1


def test_group_enumeration_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_group(GroupKind.AFFINE, 3, 2, cap=1000))


def test_shards_partition_the_group():
    whole = list(enumerate_group(GroupKind.AFFINE, 2, 3))
    pieces = [list(enumerate_group(GroupKind.AFFINE, 2, 3, shard=s, shards=4)) for s in range(4)]
    assert sorted(itertools.chain.from_iterable(pieces)) == sorted(whole)
    assert sum(map(len, pieces)) == len(whole)


def test_embedding_layout():
    m = embed(2, (1, 0), ((0, 1), (1, 1)))
    assert m == ((2, 1, 0), (0, 0, 1), (0, 1, 1))


def test_census_of_a12():
    rec = cen.census(GroupKind.AFFINE, 1, 2)
    assert rec.counts == Counter(
        {cen.RationalFormData.of({Z_MINUS_ONE: (1, 1)}): 1, cen.RationalFormData.of({Z_MINUS_ONE: (2,)}): 1}
    )
    assert rec.to_json_records() == [
        {"polys": [[[1, 1], [1, 1]]], "count": 1},
        {"polys": [[[1, 1], [2]]], "count": 1},
    ]


@pytest.mark.parametrize("kind", [GroupKind.AFFINE, GroupKind.PARABOLIC])
@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_census_matches_closed_form(kind, n, q):
    ctx = qcontext(q)
    count = affine_count if kind is GroupKind.AFFINE else parabolic_count
    rec = cen.census(kind, n, q)
    assert rec.total == kind.order(n, q)
    for key, c in rec.counts.items():
        assert count(n, ctx, key) == c
    assert rec.count_where(cen.is_unipotent) == q ** (n * n)


@pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)])
def test_gl_census_class_sizes(n, q):
    ctx = qcontext(q)
    rec = cen.census(GroupKind.GL, n, q)
    assert len(rec.counts) == sum(1 for _ in enumerate_form_data(n, ctx))
    for key, c in rec.counts.items():
        denom = Fraction(1)
        for phi, lam in key:
            denom *= class_size_factor(ctx, phi.degree, lam)
        assert c == gl_order(n, q) / denom == gl_count(n, ctx, key)


def test_sharded_census_equals_serial(monkeypatch):
    serial = cen.census(GroupKind.AFFINE, 2, 3)
    assert cen.census(GroupKind.AFFINE, 2, 3, shards=3, workers=1).counts == serial.counts
    monkeypatch.setenv(cen.THREADS_ENV, "2")
    assert cen.worker_count(8) == 2
    assert cen.census(GroupKind.AFFINE, 2, 3, shards=4).counts == serial.counts


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv(cen.THREADS_ENV, "1")
    assert cen.worker_count(None) == 1
    monkeypatch.setenv(cen.THREADS_ENV, "3")
    assert cen.worker_count(2) == 2
    assert cen.worker_count(None) == 3


def test_census_json_round_trip_and_stability():
    rec = cen.census(GroupKind.PARABOLIC, 1, 3)
    rows = json.loads(rec.dumps())
    back = cen.CensusRecord.from_json_records(GroupKind.PARABOLIC, 1, 3, rows)
    assert back.counts == rec.counts
    assert cen.census(GroupKind.PARABOLIC, 1, 3).dumps() == rec.dumps()
    assert rows == sorted(rows, key=lambda r: json.dumps(r["polys"]))


def test_merge_adds_counts():
    a = cen.census(GroupKind.AFFINE, 1, 2)
    merged = a.merge(a)
    assert merged.total == 4
    with pytest.raises(ValueError):
        a.merge(cen.census(GroupKind.AFFINE, 1, 3))


def test_summary_flags():
    s = cen.census(GroupKind.AFFINE, 2, 2).summary()
    assert s["order"] == 24
    assert s["unipotent"] == 16
    # from the series: s_A(2,2) = 1/3, c_A(2,2) = 7/12, ss_A(2,2) = 3/8
    assert (s["separable"], s["cyclic"], s["semisimple"]) == (8, 14, 9)


def test_centralizer_of_identity_and_translation():
    classes = conjugacy_classes(GroupKind.AFFINE, 1, 2)
    assert sorted(c.centralizer for c in classes) == [2, 2]
    classes = conjugacy_classes(GroupKind.AFFINE, 2, 3)
    ident = [c for c in classes if c.representative == identity(3)]
    assert ident[0].size == 1 and ident[0].centralizer == 432


@pytest.mark.parametrize("kind, n, q", [(GroupKind.AFFINE, 2, 2), (GroupKind.AFFINE, 1, 3), (GroupKind.PARABOLIC, 1, 3), (GroupKind.AFFINE, 3, 2)])
def test_centralizer_census(kind, n, q):
    rep = centralizer_census(kind, n, q)
    assert rep.matches["corrected"]
    assert not rep.matches["printed"]
    assert sum(c.size for c in rep.classes) == kind.order(n, q)
    assert json.loads(json.dumps(rep.to_json()))["matches"]["corrected"] is True


def test_predicted_centralizers_of_a12():
    data = cen.RationalFormData.of({Z_MINUS_ONE: (2,)})
    assert predicted_centralizers(GroupKind.AFFINE, 1, 2, data, "corrected") == [2]


def test_centralizer_cap():
    with pytest.raises(CapExceeded):
        conjugacy_classes(GroupKind.AFFINE, 2, 3, cap=1000)
    with pytest.raises(ValueError):
        centralizer_census(GroupKind.GL, 2, 2)
