"""Likelihood power, predictive power and the sample sizes they imply.

Likelihood ("statistical") power treats the planned effect as a fixed true
value, so only one sampling variance is involved.  Predictive power treats
the planned effect as the result of a thought experiment (or pilot) of the
same size, which adds a second variance; asking about a same-size
replication of that real study adds a third.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable

from .normal import cdf, quantile

PARALLEL_FACTOR = 4


class UndetectableEffect(ValueError):
    """The planned effect is zero, so no finite sample size reaches the target."""


class UnreachableTarget(ValueError):
    """The requested probability lies at or below the floor ``alpha / 2``."""


@dataclass(frozen=True)
class PowerSpec:
    b: float
    sd: float
    alpha_two_sided: float = 0.05
    target: float = 0.8
    multiplicity: int = 1

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise ValueError("b must be finite")
        if not (self.sd > 0 and math.isfinite(self.sd)):
            raise ValueError("sd must be positive")
        if not (0.0 < self.alpha_two_sided < 1.0):
            raise ValueError("alpha_two_sided must lie in (0, 1)")
        if not (0.0 < self.target < 1.0):
            raise ValueError("target must lie in (0, 1)")
        if self.multiplicity not in (1, 2, 3):
            raise ValueError("multiplicity must be 1, 2 or 3")

    @property
    def z_alpha(self) -> float:
        """``quantile(alpha / 2)``, a negative number."""
        return quantile(self.alpha_two_sided / 2.0)


@dataclass(frozen=True)
class SampleSize:
    exact: float
    n: int

    @classmethod
    def from_exact(cls, exact: float) -> "SampleSize":
        # absorb rounding noise such as 100.00000000000001
        return cls(exact, max(1, math.ceil(exact - 1e-9)))


def _required_n(spec: PowerSpec, multiplicity: int) -> SampleSize:
    if spec.b == 0:
        raise UndetectableEffect("effect size b is zero")
    floor = spec.alpha_two_sided / 2.0
    if spec.target <= floor:
        raise UnreachableTarget(
            f"target {spec.target} is below floor alpha/2 = {floor}")
    root = spec.sd * (quantile(spec.target) - spec.z_alpha) / abs(spec.b)
    return SampleSize.from_exact(multiplicity * root * root)


def required_n_likelihood(spec: PowerSpec) -> SampleSize:
    """Sample size giving likelihood power ``spec.target``."""
    return _required_n(spec, 1)


def required_n_predictive(spec: PowerSpec) -> SampleSize:
    """Sample size giving predictive power ``spec.target`` at ``spec.multiplicity``.

    With multiplicity 2 this is exactly twice the likelihood sample size.
    """
    return _required_n(spec, spec.multiplicity)


def _power(n: float, spec: PowerSpec, multiplicity: int) -> float:
    if n < 2:
        raise ValueError("n must be >= 2")
    sem = spec.sd / math.sqrt(n)
    return cdf(abs(spec.b) / (sem * math.sqrt(multiplicity)) + spec.z_alpha)


def likelihood_power(n: float, spec: PowerSpec) -> float:
    """Probability of one-sided ``P <= alpha/2`` if the true effect is ``b``.

    The test is taken in the direction of ``b``.
    """
    return _power(n, spec, 1)


def predictive_power(n: float, spec: PowerSpec) -> float:
    return _power(n, spec, spec.multiplicity)


def parallel_total(n_crossover: int) -> int:
    """Total parallel-group sample size matching a crossover trial's precision."""
    if n_crossover < 2:
        raise ValueError("n must be >= 2")
    return PARALLEL_FACTOR * int(n_crossover)


@dataclass(frozen=True)
class PowerTableColumn:
    n: int
    power: float
    predictive_2: float
    predictive_3: float
    parallel_total: int
    notes: tuple[str, ...] = ()


# cells whose widely circulated printed value disagrees with the formula
KNOWN_MISPRINTS = {(613, 2): 0.029}


def table2(spec: PowerSpec | None = None,
           ns: Iterable[int] = (100, 205, 409, 613)) -> list[PowerTableColumn]:
    if spec is None:
        spec = PowerSpec(b=1.96, sd=10.0)
    cols = []
    for n in ns:
        p2 = _power(n, spec, 2)
        notes = []
        if (spec.b, spec.sd, spec.alpha_two_sided) == (1.96, 10.0, 0.05):
            bad = KNOWN_MISPRINTS.get((n, 2))
            if bad is not None:
                notes.append(f"2-variance cell is {p2:.3f}; sometimes printed as {bad:.3f}")
        cols.append(PowerTableColumn(
            n=n,
            power=_power(n, spec, 1),
            predictive_2=p2,
            predictive_3=_power(n, spec, 3),
            parallel_total=parallel_total(n),
            notes=tuple(notes),
        ))
    return cols


def with_multiplicity(spec: PowerSpec, m: int) -> PowerSpec:
    return replace(spec, multiplicity=m)
