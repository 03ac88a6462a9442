"""Replication probabilities for Gaussian studies.

Quick tour::

    >>> from replicalc import prob_replication_from_p, p_rep
    >>> round(prob_replication_from_p(0.025).probability, 3)
    0.283
    >>> round(p_rep(0.025).probability, 3)
    0.917
"""
from .normal import InfiniteQuantile, Probability, Sidedness, cdf, phi, quantile, sf
from .study import DesignKind, StudyDesign, convert_sidedness, p_from_z, sem, z_stat
from .replication import (
    INFINITE,
    Formula,
    ReplicationQuery,
    ReplicationResult,
    figure3_curves,
    p_rep,
    prob_replication,
    prob_replication_from_p,
    prob_replication_infinite_from_p,
    prob_replication_rival,
    prob_replication_rival_design,
    prob_same_sign,
)
from .power import (
    PowerSpec,
    SampleSize,
    UndetectableEffect,
    UnreachableTarget,
    likelihood_power,
    parallel_total,
    predictive_power,
    required_n_likelihood,
    required_n_predictive,
    table2,
)
from .discrete import (
    AlignmentError,
    DiscreteDist,
    Direction,
    RangeSpec,
    convolve,
    discretize_gaussian,
    interval_mass,
    normalize,
    replication_threshold,
    tail_mass,
)

__version__ = "0.1.0"
