"""Study descriptions and the effect size / SEM / z / P value conversions."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .normal import Probability, Sidedness, quantile, sf


class DesignKind(enum.Enum):
    CROSSOVER = "crossover"
    PARALLEL = "parallel"


@dataclass(frozen=True)
class StudyDesign:
    """Observed raw effect ``b``, outcome SD ``s`` and sample size ``n``.

    For a crossover trial ``b`` and ``s`` refer to within-subject
    differences; for a parallel trial they are the between-group difference
    and pooled SD, with ``n`` counted per group.  The design kind never
    enters a probability formula.
    """

    b: float
    s: float
    n: int
    kind: DesignKind = DesignKind.CROSSOVER

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise ValueError("effect size b must be finite")
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError("standard deviation s must be positive")
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("sample size n must be an integer >= 2")
        object.__setattr__(self, "n", int(self.n))

    @property
    def sem(self) -> float:
        return sem(self)

    @property
    def variance(self) -> float:
        """Sampling variance of the mean, ``(s / sqrt(n))**2``."""
        return self.s * self.s / self.n

    @property
    def z(self) -> float:
        return z_stat(self)


def sem(d: StudyDesign) -> float:
    return d.s / math.sqrt(d.n)


def z_stat(d: StudyDesign) -> float:
    return d.b / sem(d)


def p_from_z(z: float, sidedness: Sidedness = Sidedness.ONE_SIDED) -> Probability:
    """P value for an observed z score.

    One-sided values are upper-tail areas, so a positive effect gives
    ``p < 0.5``.
    """
    if not math.isfinite(z):
        raise ValueError("z must be finite")
    if sidedness is Sidedness.ONE_SIDED:
        return Probability(sf(z), sidedness)
    return Probability(min(1.0, 2.0 * sf(abs(z))), sidedness)


def z_from_p(p: Probability) -> float:
    """Positive z score whose one-sided upper tail equals ``p``."""
    return -quantile(p.one_sided)


def convert_sidedness(p: Probability, to: Sidedness) -> Probability:
    return p.to(to)


__all__ = [
    "DesignKind", "StudyDesign", "sem", "z_stat", "p_from_z", "z_from_p",
    "convert_sidedness",
]
