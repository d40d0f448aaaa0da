import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghgd import (
    AT_LEAST,
    EXACTLY,
    BudgetExceededError,
    DomainError,
    ExactOverlapDistribution,
    OverlapFeature,
    ProblemSpec,
    count_full_overlap,
    enumerate_oracle,
    exact_distribution,
    exact_distributions,
    reduction_identity_check,
    total_selections,
)
from ghgd.distribution import enumerate_histograms

from conftest import small_specs


def _c(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def classical_pmf(n, m0, m1, k):
    return Fraction(_c(m0, k) * _c(n - m0, m1 - k), _c(n, m1))


def test_total_selections():
    assert total_selections(ProblemSpec(5, (2, 2))) == 100
    assert total_selections(ProblemSpec(4, (2, 2))) == 36
    for n in range(6):
        assert total_selections(ProblemSpec(n, (n,))) == 1


def test_count_full_overlap_classical_case():
    spec = ProblemSpec(5, (2, 2))
    assert [count_full_overlap(spec, k) for k in range(3)] == [30, 60, 10]
    assert [Fraction(count_full_overlap(spec, k), 100) for k in range(3)] == [
        classical_pmf(5, 2, 2, k) for k in range(3)
    ]
    assert count_full_overlap(spec, 3) == 0


def test_count_full_overlap_against_enumeration():
    spec = ProblemSpec(4, (2, 2, 2))
    oracle = enumerate_oracle(spec, OverlapFeature(EXACTLY, 3))
    assert {k: count_full_overlap(spec, k) for k in range(3) if count_full_overlap(spec, k)} == oracle.counts
    assert oracle.normalizer == 6**3
    assert oracle.mean() == Fraction(8, 16)


def test_count_full_overlap_at_m_min():
    for spec in [ProblemSpec(9, (4, 6, 5)), ProblemSpec(12, (3, 3)), ProblemSpec(7, (7, 2, 4, 5))]:
        mm = spec.m_min
        expected = comb(spec.n, mm)
        for m in spec.sizes:
            expected *= comb(spec.n - mm, m - mm)
        assert count_full_overlap(spec, mm) == expected


def test_count_full_overlap_rejects_k_outside_universe():
    with pytest.raises(DomainError):
        count_full_overlap(ProblemSpec(3, (1, 1)), 4)


def test_exact_distribution_examples():
    spec = ProblemSpec(4, (2, 2))
    d = exact_distribution(spec, OverlapFeature(EXACTLY, 2))
    assert d.counts == {0: 6, 1: 24, 2: 6}
    assert d.normalizer == 36
    assert exact_distribution(spec, OverlapFeature(EXACTLY, 1)).counts == {0: 6, 2: 24, 4: 6}
    assert exact_distribution(spec, OverlapFeature(AT_LEAST, 0)).counts == {4: 36}


def test_exact_distribution_rejects_bad_feature():
    with pytest.raises(DomainError):
        exact_distribution(ProblemSpec(4, (2, 2)), OverlapFeature(EXACTLY, 3))


def test_enumerate_oracle_examples():
    spec = ProblemSpec(4, (2, 2))
    f = OverlapFeature(EXACTLY, 2)
    assert enumerate_oracle(spec, f).counts == exact_distribution(spec, f).counts
    assert enumerate_oracle(ProblemSpec(5, (2, 2)), f).counts == {0: 30, 1: 60, 2: 10}
    spec = ProblemSpec(4, (2, 2, 2))
    assert sum(enumerate_histograms(spec).values()) == 216
    dists = exact_distributions(spec)
    for feature, d in dists.items():
        o = enumerate_oracle(spec, feature)
        assert (d.counts, d.normalizer) == (o.counts, o.normalizer)


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError) as err:
        enumerate_oracle(ProblemSpec(10, (5, 5)), OverlapFeature(EXACTLY, 2), budget=1000)
    assert err.value.reached == comb(10, 5) ** 2


def test_state_budget():
    with pytest.raises(BudgetExceededError) as err:
        exact_distribution(ProblemSpec(30, (10, 10, 10)), OverlapFeature(EXACTLY, 3), state_budget=5)
    assert err.value.reached > 5
    assert err.value.budget == 5


def test_reduction_identity_examples():
    spec = ProblemSpec(5, (2, 2))
    assert reduction_identity_check(spec, 1)
    assert 1 * 60 == 5 * count_full_overlap(ProblemSpec(4, (1, 1)), 0)
    assert reduction_identity_check(spec, 2)
    assert 2 * 10 == 5 * count_full_overlap(ProblemSpec(4, (1, 1)), 1)


def test_reduction_identity_preconditions():
    with pytest.raises(DomainError):
        reduction_identity_check(ProblemSpec(5, (0, 2)), 1)
    with pytest.raises(DomainError):
        reduction_identity_check(ProblemSpec(5, (2, 2)), 3)


def test_oracle_equivalence_small_grid():
    for spec in small_specs(5, 3, ordered=True):
        tally = enumerate_histograms(spec)
        dists = exact_distributions(spec)
        for feature, d in dists.items():
            o = enumerate_oracle(spec, feature)
            assert d.counts == o.counts, (spec, feature)


def test_classical_reduction():
    for n in (1, 7, 20):
        for m0 in range(n + 1):
            for m1 in range(n + 1):
                d = exact_distribution(ProblemSpec(n, (m0, m1)), OverlapFeature(EXACTLY, 2))
                for k in range(n + 1):
                    assert d.pmf(k) == classical_pmf(n, m0, m1, k)


def test_full_overlap_routes_agree():
    for spec in small_specs(6, 4):
        if spec.n == 0:
            continue
        t = spec.t_count
        eq = exact_distribution(spec, OverlapFeature(EXACTLY, t))
        ge = exact_distribution(spec, OverlapFeature(AT_LEAST, t))
        direct = {k: count_full_overlap(spec, k) for k in range(spec.m_min + 1)}
        direct = {k: v for k, v in direct.items() if v}
        assert eq.counts == ge.counts == direct


def test_subset_order_does_not_matter():
    a = exact_distributions(ProblemSpec(9, (2, 6, 4)))
    b = exact_distributions(ProblemSpec(9, (6, 4, 2)))
    for (fa, da), (fb, db) in zip(a.items(), b.items()):
        assert fa == fb and da.counts == db.counts


def test_json_round_trip_is_bit_exact():
    d = exact_distribution(ProblemSpec(100, (15, 15, 15, 15)), OverlapFeature(AT_LEAST, 2))
    text = d.to_json()
    back = ExactOverlapDistribution.from_json(text)
    assert back.counts == d.counts and back.normalizer == d.normalizer
    assert back.to_json() == text
    doc = json.loads(text)
    assert set(doc) == {"n", "m", "feature", "normalizer", "counts"}
    assert doc["feature"] == {"kind": "at_least", "t": 2}
    assert all(isinstance(v, str) for v in doc["counts"].values())


def test_distribution_accessors():
    d = exact_distribution(ProblemSpec(5, (2, 2)), OverlapFeature(EXACTLY, 2))
    assert d.pmf(7) == 0
    assert d.sf(1) == Fraction(7, 10)
    assert d.cdf(0) == Fraction(3, 10)
    assert d.mean() == Fraction(4, 5)
    assert d.variance() == Fraction(9, 25)
    assert d.central_moment(2) == d.variance()
    assert d.modes() == [1]
    assert d.is_unimodal()


def test_is_unimodal_detects_dip():
    spec = ProblemSpec(4, (2, 2))
    assert not ExactOverlapDistribution(spec, OverlapFeature(EXACTLY, 1), {0: 5, 1: 1, 2: 5}).is_unimodal()
    assert not ExactOverlapDistribution(spec, OverlapFeature(EXACTLY, 1), {0: 5, 2: 5}).is_unimodal()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n), min_size=1, max_size=4))
))
def test_normalization(args):
    n, sizes = args
    spec = ProblemSpec(n, tuple(sizes))
    for feature, d in exact_distributions(spec).items():
        assert sum(d.counts.values()) == d.normalizer == total_selections(spec)
        assert all(0 <= k <= n for k in d.counts)
