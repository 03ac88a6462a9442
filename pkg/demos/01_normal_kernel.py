"""
The standard normal kernel
==========================

Every probability in the package comes from one CDF and its inverse.
"""

import numpy as np
from replicalc import cdf, quantile, sf

# the lower tail below -1.96 and its mirror above 1.96
print("P(Z < -1.96) =", round(cdf(-1.96), 6))
print("P(Z > 1.96)  =", round(sf(1.96), 6))

# quantile undoes cdf, to about 1e-15 in p
p = np.array([1e-10, 0.025, 0.5, 0.975, 1 - 1e-10])
z = quantile(p)
print("quantiles:", np.round(z, 6))
print("roundtrip error:", np.max(np.abs(cdf(z) - p)))

# deep tails keep relative accuracy because they are never computed as 1 - something
print("P(Z < -20) =", cdf(-20.0))
