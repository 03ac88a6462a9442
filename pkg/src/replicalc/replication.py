"""Closed-form replication probabilities.

Every function here assumes a flat prior on the true effect.  The observed
effect then fixes a Gaussian posterior ``N(b, v1)`` and a replicating study
of size ``n2`` adds its own sampling variance ``v2``.  A replication
"succeeds" in the P-value sense when the replicate's one-sided P value,
computed against the combined variance ``v1 + v2``, is at most ``p3``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .normal import SQRT2, Probability, cdf, quantile
from .study import StudyDesign

# critical value used by the rival (fixed-null-variance) formulation
RIVAL_CRITICAL_Z = 1.96


class _Infinite(enum.Enum):
    INFINITE = "inf"

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __format__(self, spec):
        return format(str(self), spec)


INFINITE = _Infinite.INFINITE
SampleSize = Union[int, _Infinite]


class Formula(enum.Enum):
    GENERAL = "general"                        # from b, s, n1, n2
    FROM_P = "same_size"                       # from P1, equal sample sizes
    INFINITE_N2 = "infinite_n2"                # from P1, replicating study of unbounded size
    SAME_SIGN = "same_sign"                    # Killeen's P_rep, equal sizes
    SAME_SIGN_INFINITE = "same_sign_infinite"  # same sign, unbounded replicating study
    RIVAL = "rival"                            # null variance v2 only


@dataclass(frozen=True)
class ReplicationQuery:
    """Replication threshold ``p3`` (one-sided) and replicating size ``n2``."""

    p3: float = 0.025
    n2: SampleSize = INFINITE

    def __post_init__(self):
        p3 = _one_sided(self.p3, "p3")
        object.__setattr__(self, "p3", p3)
        if self.n2 is not INFINITE:
            if isinstance(self.n2, float) and math.isinf(self.n2):
                object.__setattr__(self, "n2", INFINITE)
            elif int(self.n2) != self.n2 or self.n2 < 2:
                raise ValueError("n2 must be an integer >= 2 or INFINITE")
            else:
                object.__setattr__(self, "n2", int(self.n2))


@dataclass(frozen=True)
class ReplicationResult:
    probability: float
    formula: Formula

    def __float__(self):
        return self.probability


def _one_sided(p, name: str) -> float:
    if isinstance(p, Probability):
        p = p.one_sided
    p = float(p)
    if not (0.0 < p < 1.0):
        raise ValueError(f"{name} must lie strictly between 0 and 1, got {p!r}")
    return p


def replicate_variance(s: float, n2: SampleSize) -> float:
    return 0.0 if n2 is INFINITE else s * s / n2


def prob_replication(d1: StudyDesign, q: ReplicationQuery) -> ReplicationResult:
    """Probability that the replicate reaches one-sided ``P <= q.p3``."""
    v1 = d1.variance
    v2 = replicate_variance(d1.s, q.n2)
    value = cdf(d1.b / math.sqrt(v1 + v2) + quantile(q.p3))
    formula = Formula.INFINITE_N2 if q.n2 is INFINITE else Formula.GENERAL
    return ReplicationResult(value, formula)


def prob_replication_from_p(p1, p3=0.025) -> ReplicationResult:
    """Same-size replication probability from the original one-sided P value."""
    p1 = _one_sided(p1, "p1")
    p3 = _one_sided(p3, "p3")
    return ReplicationResult(cdf(-quantile(p1) / SQRT2 + quantile(p3)), Formula.FROM_P)


def prob_replication_infinite_from_p(p1, p3=0.025) -> ReplicationResult:
    p1 = _one_sided(p1, "p1")
    p3 = _one_sided(p3, "p3")
    return ReplicationResult(cdf(-quantile(p1) + quantile(p3)), Formula.INFINITE_N2)


def p_rep(p1, infinite_n2: bool = False) -> ReplicationResult:
    """Probability that the replicate's effect has the same sign.

    With an unbounded replicating study this is exactly ``1 - p1``.
    """
    p1 = _one_sided(p1, "p1")
    if infinite_n2:
        return ReplicationResult(1.0 - p1, Formula.SAME_SIGN_INFINITE)
    return ReplicationResult(cdf(-quantile(p1) / SQRT2), Formula.SAME_SIGN)


def prob_replication_rival(p1) -> ReplicationResult:
    """Replication probability when the replicate is tested against ``v2`` alone.

    ``p1`` is two-sided (a bare float is taken as two-sided here).  This is
    the formulation that treats the replicate's null distribution as having
    only its own sampling variance; it is oriented as a success probability.
    """
    if isinstance(p1, Probability):
        p1 = p1.two_sided
    p1 = float(p1)
    if not (0.0 < p1 < 1.0):
        raise ValueError(f"p1 must lie strictly between 0 and 1, got {p1!r}")
    z1 = -quantile(p1 / 2.0)
    return ReplicationResult(cdf((z1 - RIVAL_CRITICAL_Z) / SQRT2), Formula.RIVAL)


def figure3_curves(z_grid: Sequence[float], p3: float = 0.025) -> dict[str, np.ndarray]:
    """Three replication curves as functions of the original z score.

    ``same_size`` is the same-size replication probability, ``rival`` the
    fixed-null-variance alternative and ``infinite_n2`` the limit both share
    when the replicating study is unbounded.
    """
    z = np.asarray(z_grid, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("z grid must be finite")
    crit = -quantile(_one_sided(p3, "p3"))
    return {
        "z": z,
        "same_size": cdf(z / SQRT2 - crit),
        "rival": cdf((z - RIVAL_CRITICAL_Z) / SQRT2),
        "infinite_n2": cdf(z - crit),
    }


def prob_same_sign(d1: StudyDesign, q: ReplicationQuery) -> ReplicationResult:
    """Probability that the replicate's effect has the same sign as ``d1.b``."""
    v = d1.variance + replicate_variance(d1.s, q.n2)
    formula = Formula.SAME_SIGN_INFINITE if q.n2 is INFINITE else Formula.SAME_SIGN
    return ReplicationResult(cdf(abs(d1.b) / math.sqrt(v)), formula)


def prob_replication_rival_design(d1: StudyDesign, n2: int) -> ReplicationResult:
    """Rival probability for arbitrary ``n2``: replicate mean above ``1.96 * s/sqrt(n2)``."""
    if n2 is INFINITE or n2 < 2:
        raise ValueError("rival formulation needs a finite n2 >= 2")
    v2 = replicate_variance(d1.s, n2)
    value = cdf((d1.b - RIVAL_CRITICAL_Z * math.sqrt(v2)) / math.sqrt(d1.variance + v2))
    return ReplicationResult(value, Formula.RIVAL)
