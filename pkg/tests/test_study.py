import math

import pytest
from hypothesis import given, strategies as st

from replicalc.normal import Probability, Sidedness
from replicalc.study import (
    DesignKind, StudyDesign, convert_sidedness, p_from_z, sem, z_from_p, z_stat,
)


def test_sem():
    assert sem(StudyDesign(2, 10, 100)) == 1.0
    assert sem(StudyDesign(2, 10, 50)) == pytest.approx(math.sqrt(2), rel=1e-15)
    assert sem(StudyDesign(0, 1, 4)) == 0.5


def test_sem_ignores_design_kind():
    a = StudyDesign(1.0, 10, 80, DesignKind.CROSSOVER)
    b = StudyDesign(1.0, 10, 80, DesignKind.PARALLEL)
    assert sem(a) == sem(b)


def test_z_stat():
    assert z_stat(StudyDesign(1.96, 10, 100)) == pytest.approx(1.96)
    assert z_stat(StudyDesign(0, 10, 100)) == 0
    assert z_stat(StudyDesign(2, 10, 100)) == 2


@pytest.mark.parametrize("kwargs", [
    dict(b=1, s=0, n=10), dict(b=1, s=-1, n=10), dict(b=1, s=1, n=1),
    dict(b=math.nan, s=1, n=10), dict(b=1, s=1, n=2.5),
])
def test_invalid_designs(kwargs):
    with pytest.raises(ValueError):
        StudyDesign(**kwargs)


def test_p_from_z():
    assert p_from_z(2.0).value == pytest.approx(0.02275, abs=5e-6)
    assert p_from_z(0.0).value == 0.5
    # 2 * (1 - Phi(1.96)) from the oracle
    two = p_from_z(1.96, Sidedness.TWO_SIDED)
    assert two.value == pytest.approx(0.04999579029644087, rel=1e-12)
    assert two.sidedness is Sidedness.TWO_SIDED


def test_convert_sidedness():
    assert convert_sidedness(Probability(0.025), Sidedness.TWO_SIDED).value == 0.05
    assert convert_sidedness(Probability(0.028, Sidedness.TWO_SIDED),
                             Sidedness.ONE_SIDED).value == 0.014
    assert convert_sidedness(Probability(0.5), Sidedness.TWO_SIDED).value == 1.0
    p = Probability(0.3)
    assert convert_sidedness(p, Sidedness.ONE_SIDED) is p


@given(st.floats(min_value=-6, max_value=6))
def test_z_p_roundtrip(z):
    p = p_from_z(z)
    if 0 < p.value < 1:
        assert abs(z_from_p(p) - z) <= 1e-7
