"""Arbitrary-precision reference values, independent of the package's kernel.

The CDF uses the everywhere-convergent series
``Phi(z) = 1/2 + phi(z) * sum_n z^(2n+1) / (2n+1)!!`` evaluated at 60
significant digits, where cancellation is harmless.  The quantile is plain
bisection on that CDF.
"""
import mpmath as mp

mp.mp.dps = 60


def phi(z):
    z = mp.mpf(z)
    return mp.exp(-z * z / 2) / mp.sqrt(2 * mp.pi)


def cdf(z):
    z = mp.mpf(z)
    if abs(z) > 9:
        # series needs too many terms out here; use the mpmath erfc instead
        return mp.erfc(-z / mp.sqrt(2)) / 2
    term = z
    total = z
    n = 0
    eps = mp.mpf(10) ** (-mp.mp.dps)
    while abs(term) > eps * abs(total) or n < 5:
        term = term * z * z / (2 * n + 3)
        total += term
        n += 1
    return mp.mpf(1) / 2 + phi(z) * total


def quantile(p):
    p = mp.mpf(p)
    lo, hi = mp.mpf(-40), mp.mpf(40)
    for _ in range(400):
        mid = (lo + hi) / 2
        if cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def F(x):
    return float(x)
