"""Standard normal density, CDF and quantile.

All three functions accept scalars or numpy arrays.  Scalars come back as
plain floats, arrays as float64 arrays of the same shape.

The CDF goes through a complementary error function built from two pieces:
a positive-term series for small arguments and a continued fraction for the
tail.  Only the lower tail is ever evaluated directly; the upper half is
taken by reflection, so ``cdf(z) + cdf(-z) == 1`` up to a single rounding.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_INV_SQRT_PI = 1.0 / math.sqrt(math.pi)

# erfc argument at which we switch from the series to the continued fraction
_ERFC_SPLIT = 1.5
_SERIES_TERMS = 40
_CF_TERMS = 80


class InfiniteQuantile(ValueError):
    """Raised when the quantile of exactly 0 or 1 is requested."""


class Sidedness(enum.Enum):
    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"


@dataclass(frozen=True)
class Probability:
    """A probability tagged with the sidedness of the test it came from.

    Converting between sidednesses doubles or halves the value; doubling is
    clamped at 1.
    """

    value: float
    sidedness: Sidedness = Sidedness.ONE_SIDED

    def __post_init__(self):
        v = float(self.value)
        if not (0.0 <= v <= 1.0):
            raise ValueError(f"probability must lie in [0, 1], got {v!r}")
        object.__setattr__(self, "value", v)

    def to(self, sidedness: Sidedness) -> "Probability":
        if sidedness is self.sidedness:
            return self
        if sidedness is Sidedness.TWO_SIDED:
            return Probability(min(1.0, 2.0 * self.value), sidedness)
        return Probability(self.value / 2.0, sidedness)

    @property
    def one_sided(self) -> float:
        return self.to(Sidedness.ONE_SIDED).value

    @property
    def two_sided(self) -> float:
        return self.to(Sidedness.TWO_SIDED).value

    def __float__(self):
        return self.value


def _as_array(x, name: str) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr, arr.ndim == 0


def _out(arr: np.ndarray, scalar: bool):
    return float(arr) if scalar else arr


def _erfc_nonneg(x: np.ndarray) -> np.ndarray:
    """erfc for x >= 0 with ~1e-15 relative accuracy."""
    out = np.empty_like(x)
    small = x < _ERFC_SPLIT

    xs = x[small]
    if xs.size:
        # erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!
        x2 = xs * xs
        term = xs.copy()
        total = xs.copy()
        for n in range(_SERIES_TERMS):
            term *= 2.0 * x2 / (2 * n + 3)
            total += term
        out[small] = 1.0 - _TWO_OVER_SQRT_PI * np.exp(-x2) * total

    xl = x[~small]
    if xl.size:
        # erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
        t = xl.copy()
        for k in range(_CF_TERMS, 0, -1):
            t = xl + (0.5 * k) / t
        out[~small] = _INV_SQRT_PI * np.exp(-xl * xl) / t
    return out


def phi(z):
    """Standard normal density."""
    arr, scalar = _as_array(z, "z")
    return _out(_INV_SQRT_2PI * np.exp(-0.5 * arr * arr), scalar)


def _cdf(arr: np.ndarray) -> np.ndarray:
    lower = 0.5 * _erfc_nonneg(np.abs(arr) / SQRT2)
    return np.where(arr <= 0.0, lower, 1.0 - lower)


def cdf(z):
    """Standard normal cumulative distribution function."""
    arr, scalar = _as_array(z, "z")
    return _out(_cdf(np.atleast_1d(arr)).reshape(arr.shape), scalar)


def sf(z):
    """Upper tail ``1 - cdf(z)`` without cancellation for large z."""
    arr, scalar = _as_array(z, "z")
    return _out(_cdf(-np.atleast_1d(arr)).reshape(arr.shape), scalar)


# Acklam's rational approximation to the normal quantile (rel. error ~1.2e-9)
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)
_P_LOW = 0.02425


def _poly(coefs, x):
    acc = np.zeros_like(x) + coefs[0]
    for c in coefs[1:]:
        acc = acc * x + c
    return acc


def _lower_quantile_guess(p: np.ndarray) -> np.ndarray:
    """Initial guess for p in (0, 0.5]."""
    z = np.empty_like(p)
    tail = p < _P_LOW
    if np.any(tail):
        q = np.sqrt(-2.0 * np.log(p[tail]))
        z[tail] = _poly(_C, q) / (_poly(_D, q) * q + 1.0)
    mid = ~tail
    if np.any(mid):
        q = p[mid] - 0.5
        r = q * q
        z[mid] = _poly(_A, r) * q / (_poly(_B, r) * r + 1.0)
    return z


def _quantile(p: np.ndarray, newton_steps: int) -> np.ndarray:
    # work on the lower half so the Newton residual is measured on the
    # small tail probability rather than on 1 - p
    upper = p > 0.5
    lo = np.where(upper, 1.0 - p, p)
    z = _lower_quantile_guess(lo)
    for _ in range(newton_steps):
        resid = _cdf(z) - lo
        z = z - resid / (_INV_SQRT_2PI * np.exp(-0.5 * z * z))
    return np.where(upper, -z, z)


def quantile(p, newton_steps: int = 2):
    """Inverse of :func:`cdf`.

    Raises :class:`InfiniteQuantile` for p equal to 0 or 1 and
    ``ValueError`` for p outside [0, 1].
    """
    arr = np.asarray(p, dtype=float)
    scalar = arr.ndim == 0
    if np.any(np.isnan(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
        raise ValueError("p must lie in the open interval (0, 1)")
    if np.any((arr == 0.0) | (arr == 1.0)):
        raise InfiniteQuantile("quantile of 0 or 1 is infinite")
    flat = np.atleast_1d(arr)
    return _out(_quantile(flat, newton_steps).reshape(arr.shape), scalar)
