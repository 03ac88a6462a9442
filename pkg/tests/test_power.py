import pytest
from hypothesis import given, settings, strategies as st

from replicalc.power import (
    PowerSpec, UndetectableEffect, UnreachableTarget, likelihood_power, parallel_total,
    predictive_power, required_n_likelihood, required_n_predictive, table2, with_multiplicity,
)
from replicalc.replication import ReplicationQuery, prob_replication
from replicalc.study import StudyDesign

SPEC = PowerSpec(b=1.96, sd=10.0)


def test_required_n_likelihood():
    half = required_n_likelihood(PowerSpec(1.96, 10, target=0.5))
    assert half.n == 100
    assert half.exact == pytest.approx(100, abs=0.01)
    eighty = required_n_likelihood(SPEC)
    # oracle: (10 (Phi^-1(0.8) - Phi^-1(0.025)) / 1.96)^2
    assert eighty.exact == pytest.approx(204.31277942391424, rel=1e-12)
    assert eighty.n == 205
    assert required_n_likelihood(PowerSpec(1.96, 1, target=0.5)).exact == pytest.approx(1.0, abs=1e-4)


def test_zero_effect():
    with pytest.raises(UndetectableEffect):
        required_n_likelihood(PowerSpec(0.0, 10))


@pytest.mark.parametrize("n, expected", [(100, 0.500), (205, 0.801), (613, 0.998)])
def test_likelihood_power(n, expected):
    assert abs(likelihood_power(n, SPEC) - expected) <= 5e-4


@pytest.mark.parametrize("n, m, expected", [
    (100, 2, 0.283), (205, 3, 0.367), (409, 2, 0.800), (613, 3, 0.800), (50, 2, 0.164),
])
def test_predictive_power(n, m, expected):
    assert abs(predictive_power(n, with_multiplicity(SPEC, m)) - expected) <= 5e-4


def test_required_n_predictive():
    assert required_n_predictive(with_multiplicity(SPEC, 2)).n == 409
    assert required_n_predictive(with_multiplicity(SPEC, 3)).n == 613


def test_required_n_predictive_against_bisection():
    spec = PowerSpec(1.96, 10, target=0.5, multiplicity=2)
    lo, hi = 2.0, 10_000.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if predictive_power(mid, spec) < 0.5:
            lo = mid
        else:
            hi = mid
    got = required_n_predictive(spec)
    assert got.exact == pytest.approx(lo, abs=1e-6)
    assert abs(got.n - 200) <= 1


def test_unreachable_target():
    with pytest.raises(UnreachableTarget):
        required_n_predictive(PowerSpec(1.96, 10, target=0.02, multiplicity=2))
    with pytest.raises(UnreachableTarget):
        required_n_likelihood(PowerSpec(1.96, 10, target=0.025))


def test_spec_validation():
    with pytest.raises(ValueError):
        PowerSpec(1, 10, multiplicity=4)
    with pytest.raises(ValueError):
        PowerSpec(1, 10, target=1.0)
    with pytest.raises(ValueError):
        PowerSpec(1, -1)


@pytest.mark.parametrize("n, total", [(100, 400), (205, 820), (409, 1636), (613, 2452)])
def test_parallel_total(n, total):
    assert parallel_total(n) == total


def test_table2_values():
    cols = {c.n: c for c in table2()}
    assert [round(cols[n].power, 3) for n in (100, 205, 409, 613)] == [0.5, 0.801, 0.977, 0.998]
    assert [round(cols[n].predictive_2, 3) for n in (100, 205, 409, 613)] == [0.283, 0.51, 0.8, 0.929]
    assert [round(cols[n].predictive_3, 3) for n in (205, 409, 613)] == [0.367, 0.629, 0.8]
    assert [cols[n].parallel_total for n in (100, 205, 409, 613)] == [400, 820, 1636, 2452]
    assert cols[613].notes and "0.029" in cols[613].notes[0]
    assert not cols[100].notes


def test_table2_three_variance_at_100():
    # the formula gives 0.2037; see the acceptance suite for the printed 0.207
    c = table2(ns=[100])[0]
    assert c.predictive_3 == pytest.approx(0.20373404614423, abs=1e-9)


targets = st.floats(min_value=0.03, max_value=0.999)
effects = st.floats(min_value=0.05, max_value=20)
sds = st.floats(min_value=0.5, max_value=50)


@settings(max_examples=200, deadline=None)
@given(effects, sds, targets)
def test_roundtrip(b, sd, t):
    spec = PowerSpec(b, sd, target=t)
    n = required_n_likelihood(spec).exact
    if n >= 2:
        assert abs(likelihood_power(n, spec) - t) <= 1e-9


@given(effects, sds, targets)
def test_doubling_law(b, sd, t):
    spec = PowerSpec(b, sd, target=t)
    assert required_n_predictive(with_multiplicity(spec, 2)).exact == \
        2 * required_n_likelihood(spec).exact


@given(effects, sds, st.integers(min_value=2, max_value=10**6))
def test_multiplicity_ordering(b, sd, n):
    spec = PowerSpec(b, sd)
    p1 = likelihood_power(n, spec)
    p2 = predictive_power(n, with_multiplicity(spec, 2))
    p3 = predictive_power(n, with_multiplicity(spec, 3))
    assert p1 >= p2 >= p3
    if p1 < 1.0:
        assert p1 > p2
    if 0.0 < p3 < 1.0 and p2 < 1.0:
        assert p2 > p3


@settings(max_examples=200)
@given(effects, sds, st.integers(min_value=2, max_value=10**5))
def test_two_variance_equals_general_form(b, sd, n):
    spec = PowerSpec(b, sd, multiplicity=2)
    general = prob_replication(StudyDesign(b, sd, n), ReplicationQuery(0.025, n))
    assert abs(predictive_power(n, spec) - general.probability) <= 1e-12


@given(effects, sds, targets)
def test_sample_size_monotone_in_effect_and_sd(b, sd, t):
    base = required_n_likelihood(PowerSpec(b, sd, target=t)).exact
    assert required_n_likelihood(PowerSpec(b * 1.1, sd, target=t)).exact < base
    assert required_n_likelihood(PowerSpec(b, sd * 1.1, target=t)).exact > base
