"""Monte Carlo check of the closed forms by direct two-stage sampling.

Each trial draws a true effect from the flat-prior posterior
``beta ~ N(b, v1)`` and then a replicate estimate ``b_repl ~ N(beta, v2)``.
Successes are counted against thresholds on the raw scale, so no P value
is recomputed inside the loop.

Random numbers come from Philox, a counter-based generator: chunk ``c`` of
stage ``i`` always reads the stream at counter ``(0, 0, c, i)`` under key
``seed``.  Results therefore do not depend on how chunks are scheduled, and
the success count is an integer sum, so threaded and serial runs agree
exactly.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import replication as rep
from .normal import quantile
from .power import PowerSpec, predictive_power
from .study import StudyDesign

CHUNK = 1 << 20
_U53 = 2.0 ** -53


class Mode(enum.Enum):
    P_VALUE = "p_value_replication"
    SAME_SIGN = "same_sign"


@dataclass(frozen=True)
class SimConfig:
    trials: int
    seed: int
    design: StudyDesign
    query: rep.ReplicationQuery = rep.ReplicationQuery(0.025, rep.INFINITE)
    mode: Mode = Mode.P_VALUE

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise ValueError("trials must be a positive integer")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "mode", Mode(self.mode))


@dataclass(frozen=True)
class SimReport:
    estimate: float
    std_error: float
    trials: int
    seed: int
    closed_form: float
    z_discrepancy: float
    successes: int

    def within(self, n_se: float = 4.0) -> bool:
        return self.z_discrepancy <= n_se

    def as_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "trials": self.trials,
            "seed": self.seed,
            "closed_form": self.closed_form,
            "z_discrepancy": self.z_discrepancy,
        }


def _report(successes: int, trials: int, seed: int, closed_form: float) -> SimReport:
    est = successes / trials
    se = math.sqrt(est * (1.0 - est) / trials)
    diff = abs(est - closed_form)
    if se > 0:
        z = diff / se
    else:
        # every trial agreed; only an exact match counts as calibrated
        z = 0.0 if diff == 0 else math.inf
    return SimReport(est, se, trials, seed, float(closed_form), z, successes)


def uniforms(seed: int, chunk: int, stage: int, size: int) -> np.ndarray:
    """Open-interval uniforms for one (chunk, stage) stream."""
    gen = np.random.Philox(key=seed, counter=[0, 0, chunk, stage])
    raw = gen.random_raw(size)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _U53


def standard_normals(seed: int, size: int, stage: int = 0) -> np.ndarray:
    """N(0, 1) draws by inverse CDF on the counter-based stream."""
    out = []
    for c, start in enumerate(range(0, size, CHUNK)):
        out.append(_normals(seed, c, stage, min(CHUNK, size - start)))
    return np.concatenate(out)


def _normals(seed: int, chunk: int, stage: int, size: int) -> np.ndarray:
    # the rational stage alone is accurate to ~1e-9 relative, far below
    # sampling noise; Newton refinement would triple the cost
    return quantile(uniforms(seed, chunk, stage, size), newton_steps=0)


def _count_chunk(seed: int, chunk: int, size: int, centre: float,
                 sds: Sequence[float], threshold: float) -> int:
    x = np.full(size, centre)
    for stage, sd in enumerate(sds):
        x += sd * _normals(seed, chunk, stage, size)
    return int(np.count_nonzero(x > threshold))


def count_successes(seed: int, trials: int, centre: float, sds: Sequence[float],
                    threshold: float, workers: int | None = None) -> int:
    """Trials in which ``centre + sum(sd_i * Z_i)`` exceeds ``threshold``."""
    sizes = [min(CHUNK, trials - s) for s in range(0, trials, CHUNK)]
    if workers is None:
        workers = min(4, os.cpu_count() or 1)
    args = [(seed, c, n, centre, tuple(sds), threshold) for c, n in enumerate(sizes)]
    if workers <= 1 or len(args) == 1:
        return sum(_count_chunk(*a) for a in args)
    with ThreadPoolExecutor(workers) as pool:
        return sum(pool.map(lambda a: _count_chunk(*a), args))


def _effect(d: StudyDesign) -> float:
    # measure success in the direction of the observed effect
    return abs(d.b)


def simulate_replication(cfg: SimConfig, workers: int | None = None) -> SimReport:
    """Two-stage draw: truth from the posterior, then the replicate."""
    if cfg.query.n2 is rep.INFINITE:
        raise ValueError("use simulate_truth for an unbounded replicating study")
    d = cfg.design
    sd1 = math.sqrt(d.variance)
    sd2 = math.sqrt(rep.replicate_variance(d.s, cfg.query.n2))
    if cfg.mode is Mode.P_VALUE:
        threshold = -quantile(cfg.query.p3) * math.hypot(sd1, sd2)
        closed = rep.prob_replication(
            StudyDesign(_effect(d), d.s, d.n, d.kind), cfg.query).probability
    else:
        threshold = 0.0
        closed = rep.prob_same_sign(d, cfg.query).probability
    hits = count_successes(cfg.seed, cfg.trials, _effect(d), (sd1, sd2), threshold, workers)
    return _report(hits, cfg.trials, cfg.seed, closed)


def simulate_truth(cfg: SimConfig, workers: int | None = None) -> SimReport:
    """Replication by an unbounded study: only the true effect is drawn."""
    d = cfg.design
    sd1 = math.sqrt(d.variance)
    query = rep.ReplicationQuery(cfg.query.p3, rep.INFINITE)
    if cfg.mode is Mode.P_VALUE:
        threshold = -quantile(query.p3) * sd1
        closed = rep.prob_replication(
            StudyDesign(_effect(d), d.s, d.n, d.kind), query).probability
    else:
        threshold = 0.0
        closed = rep.prob_same_sign(d, query).probability
    hits = count_successes(cfg.seed, cfg.trials, _effect(d), (sd1,), threshold, workers)
    return _report(hits, cfg.trials, cfg.seed, closed)


def simulate(cfg: SimConfig, workers: int | None = None) -> SimReport:
    if cfg.query.n2 is rep.INFINITE:
        return simulate_truth(cfg, workers)
    return simulate_replication(cfg, workers)


def simulate_rival(cfg: SimConfig, workers: int | None = None) -> SimReport:
    """Same draws, but success means ``b_repl / sqrt(v2) > 1.96``."""
    if cfg.query.n2 is rep.INFINITE:
        raise ValueError("the rival criterion needs a finite n2")
    d = cfg.design
    sd1 = math.sqrt(d.variance)
    sd2 = math.sqrt(rep.replicate_variance(d.s, cfg.query.n2))
    closed = rep.prob_replication_rival_design(
        StudyDesign(_effect(d), d.s, d.n, d.kind), cfg.query.n2).probability
    hits = count_successes(cfg.seed, cfg.trials, _effect(d), (sd1, sd2),
                           rep.RIVAL_CRITICAL_Z * sd2, workers)
    return _report(hits, cfg.trials, cfg.seed, closed)


def simulate_predictive(spec: PowerSpec, n: int, trials: int, seed: int,
                        workers: int | None = None) -> SimReport:
    """Chain of ``spec.multiplicity`` same-size studies started from a planned effect.

    Multiplicity 1 draws one real study around a fixed true effect (ordinary
    power).  Each further stage first draws a truth from the previous
    stage's result and then a new study around it.
    """
    if trials < 1:
        raise ValueError("trials must be a positive integer")
    sd = spec.sd / math.sqrt(n)
    m = spec.multiplicity
    threshold = -spec.z_alpha * sd * math.sqrt(m)
    hits = count_successes(seed, trials, abs(spec.b), (sd,) * m, threshold, workers)
    return _report(hits, trials, seed, predictive_power(n, spec))


def design_for_z(z: float, s: float = 10.0, n: int = 100) -> StudyDesign:
    """A design whose z statistic equals ``z``."""
    return StudyDesign(z * s / math.sqrt(n), s, n)


def design_for_p(p1_one_sided: float, s: float = 10.0, n: int = 100) -> StudyDesign:
    return design_for_z(-quantile(p1_one_sided), s, n)
