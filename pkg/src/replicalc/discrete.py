"""Fixed-width probability-mass histograms of Gaussians and their convolution.

Bins are half-open ``[x, x + delta)`` and labelled by their lower edge, the
way a reading of "120 mmHg" on a millimetre scale means ``[120, 121)``.
Mass that falls outside the grid is dropped and reported through
:attr:`DiscreteDist.total`; nothing is renormalised unless you ask for it.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .normal import cdf, quantile, sf

ALIGN_TOL = 1e-9
DEFAULT_DELTA = 0.01


class AlignmentError(ValueError):
    """A threshold does not fall on a bin edge."""


class Direction(enum.Enum):
    AT_OR_ABOVE = "at_or_above"
    BELOW = "below"


@dataclass(frozen=True)
class RangeSpec:
    lo: float = -4.0
    hi: float = 8.0
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if not (self.delta > 0):
            raise ValueError("delta must be positive")
        if not (self.lo < self.hi):
            raise ValueError("lo must be below hi")
        ratio = (self.hi - self.lo) / self.delta
        if abs(ratio - round(ratio)) > ALIGN_TOL * max(1.0, ratio):
            raise ValueError(f"(hi - lo) / delta = {ratio} is not an integer")

    @property
    def bins(self) -> int:
        return int(round((self.hi - self.lo) / self.delta))

    def edges(self) -> np.ndarray:
        # lo + k*delta rather than a running sum, so edges do not drift
        return self.lo + np.arange(self.bins + 1) * self.delta


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    origin: float
    delta: float
    masses: np.ndarray

    def __post_init__(self):
        m = np.array(self.masses, dtype=float)
        if m.ndim != 1 or m.size == 0:
            raise ValueError("masses must be a non-empty 1-d array")
        if np.any(m < 0) or not np.all(np.isfinite(m)):
            raise ValueError("masses must be finite and non-negative")
        if m.sum() > 1.0 + 1e-12:
            raise ValueError(f"total mass {m.sum()} exceeds 1")
        if not self.delta > 0:
            raise ValueError("delta must be positive")
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    def __len__(self):
        return self.masses.size

    @property
    def lower_edges(self) -> np.ndarray:
        return self.origin + np.arange(len(self)) * self.delta

    @property
    def hi(self) -> float:
        return self.origin + len(self) * self.delta

    @property
    def total(self) -> float:
        return math.fsum(self.masses)

    def mean(self) -> float:
        centres = self.lower_edges + 0.5 * self.delta
        return float(np.dot(centres, self.masses) / self.total)

    def edge_index(self, x: float) -> int:
        """Index ``k`` with ``origin + k*delta == x``; raises if ``x`` is off-grid."""
        pos = (x - self.origin) / self.delta
        k = round(pos)
        if abs(pos - k) > ALIGN_TOL * max(1.0, abs(pos)):
            raise AlignmentError(
                f"{x} is not a bin edge (origin {self.origin}, delta {self.delta})")
        return int(k)

    def mass_of_bin(self, lower_edge: float) -> float:
        k = self.edge_index(lower_edge)
        if not 0 <= k < len(self):
            return 0.0
        return float(self.masses[k])

    def to_csv(self, path=None, precision: int | None = None) -> str:
        """Write ``bin_lower_edge,mass`` rows; returns the text as well."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bin_lower_edge", "mass"])
        for x, m in zip(self.lower_edges, self.masses):
            if precision is None:
                w.writerow([_fmt_edge(x, self.delta), repr(float(m))])
            else:
                w.writerow([_fmt_edge(x, self.delta), f"{m:.{precision}g}"])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, newline="")
        return text


def _fmt_edge(x: float, delta: float) -> str:
    # enough decimals to show the grid, without float noise like 0.30000000000000004
    digits = max(0, -math.floor(math.log10(delta)) + 3)
    s = f"{x:.{digits}f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def discretize_gaussian(mean: float, sd: float, rng: RangeSpec = RangeSpec()) -> DiscreteDist:
    """Bin masses of ``N(mean, sd**2)`` on the grid described by ``rng``.

    Bins on the upper side of the mean are computed from upper-tail areas so
    that far-tail masses keep their relative precision.
    """
    if not (sd > 0 and math.isfinite(sd)):
        raise ValueError("sd must be positive")
    z = (rng.edges() - mean) / sd
    lo_z, hi_z = z[:-1], z[1:]
    below = cdf(hi_z) - cdf(lo_z)
    above = sf(lo_z) - sf(hi_z)
    masses = np.where(lo_z >= 0.0, above, below)
    return DiscreteDist(rng.lo, rng.delta, np.clip(masses, 0.0, None))


def point_mass(at: float = 0.0, delta: float = DEFAULT_DELTA) -> DiscreteDist:
    return DiscreteDist(at, delta, np.array([1.0]))


def uniform_prior(rng: RangeSpec = RangeSpec()) -> DiscreteDist:
    """Equal mass on every bin of a finite grid, summing to one."""
    return DiscreteDist(rng.lo, rng.delta, np.full(rng.bins, 1.0 / rng.bins))


def normalize(d: DiscreteDist) -> DiscreteDist:
    return DiscreteDist(d.origin, d.delta, d.masses / d.total)


def tail_mass(d: DiscreteDist, threshold: float,
              direction: Direction = Direction.AT_OR_ABOVE,
              interpolate: bool = False) -> float:
    """Mass on one side of ``threshold``.

    ``threshold`` must be a bin edge unless ``interpolate`` is set, in which
    case the straddled bin is split in proportion to its overlap.
    """
    direction = Direction(direction)
    m = d.masses
    if interpolate:
        pos = (threshold - d.origin) / d.delta
        k = round(pos)
        if abs(pos - k) > ALIGN_TOL * max(1.0, abs(pos)):
            k = math.floor(pos)
        frac = max(pos - k, 0.0)
        if k < 0:
            above = d.total
        elif k >= len(d):
            above = 0.0
        else:
            above = math.fsum(m[k + 1:]) + (1.0 - frac) * m[k]
    else:
        k = min(max(d.edge_index(threshold), 0), len(d))
        above = math.fsum(m[k:])
    if direction is Direction.AT_OR_ABOVE:
        return above
    return d.total - above


def interval_mass(d: DiscreteDist, lo: float, hi: float) -> float:
    """Mass of ``[lo, hi)``; both ends must be bin edges."""
    i = min(max(d.edge_index(lo), 0), len(d))
    j = min(max(d.edge_index(hi), 0), len(d))
    return math.fsum(d.masses[i:j]) if j > i else 0.0


def convolve(a: DiscreteDist, b: DiscreteDist) -> DiscreteDist:
    """Distribution of the sum of two independent binned quantities.

    Each bin's mass is treated as sitting at the bin centre, so the sum of
    two centres lands on the centre of a result bin whose lower edge is
    ``a.origin + b.origin + delta/2``.  With lower-edge labels the result
    would be biased by half a bin.
    """
    if not math.isclose(a.delta, b.delta, rel_tol=1e-12):
        raise ValueError(f"bin widths differ: {a.delta} vs {b.delta}")
    masses = np.convolve(a.masses, b.masses)
    return DiscreteDist(a.origin + b.origin + 0.5 * a.delta, a.delta,
                        np.clip(masses, 0.0, None))


def replication_threshold(sem_combined: float, p3: float = 0.025) -> float:
    """Smallest replicate effect that reaches one-sided ``P <= p3``."""
    if not sem_combined > 0:
        raise ValueError("sem must be positive")
    return -quantile(p3) * sem_combined


def sup_norm_difference(a: DiscreteDist, b: DiscreteDist) -> float:
    """Largest per-bin mass difference between two grids with the same bins."""
    if len(a) != len(b) or not math.isclose(a.delta, b.delta, rel_tol=1e-12):
        raise ValueError("grids differ in size or bin width")
    if abs(a.origin - b.origin) > ALIGN_TOL * max(1.0, abs(a.origin)):
        raise ValueError("grids have different origins")
    return float(np.max(np.abs(a.masses - b.masses)))


def observed_and_null(delta: float = DEFAULT_DELTA) -> dict[str, DiscreteDist]:
    """Sampling distributions of a mean (SEM 1) centred on 0 and on 2."""
    rng = RangeSpec(-4.0, 8.0, delta)
    return {"null": discretize_gaussian(0.0, 1.0, rng),
            "observed": discretize_gaussian(2.0, 1.0, rng)}


def replicate_prediction(delta: float = DEFAULT_DELTA, observed: float = 1.96,
                 sem: float = 1.0) -> dict[str, DiscreteDist]:
    """Posterior of the true mean, replicate noise, and their convolution."""
    truth = discretize_gaussian(observed, sem, RangeSpec(-4.0, 8.0, delta))
    noise = discretize_gaussian(0.0, sem, RangeSpec(-8.0, 8.0, delta))
    return {"truth": truth, "noise": noise, "replicate": convolve(truth, noise)}
