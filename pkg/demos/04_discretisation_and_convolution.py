"""
Histograms instead of formulas
==============================

Cut N(2, 1) into 0.01-wide bins, read probabilities off the bins, then
convolve the posterior of the true effect with replicate noise and
compare with the closed form.
"""

import math

from replicalc import (
    Direction, RangeSpec, convolve, discretize_gaussian, replication_threshold,
    tail_mass,
)
from replicalc.discrete import interval_mass, sup_norm_difference

grid = RangeSpec(lo=-4, hi=8, delta=0.01)
obs = discretize_gaussian(2.0, 1.0, grid)
print("bins:", len(obs))
print("mass below 0:     ", round(tail_mass(obs, 0.0, Direction.BELOW), 5))
print("mass below -0.01: ", round(tail_mass(obs, -0.01, Direction.BELOW), 5))
print("bin [-0.01, 0):   ", round(obs.mass_of_bin(-0.01), 5))
print("within 2 SEM:     ", round(interval_mass(obs, 0.0, 4.0), 4))

# truth centred on 1.96 plus replicate noise of the same size
truth = discretize_gaussian(1.96, 1.0, grid)
noise = discretize_gaussian(0.0, 1.0, RangeSpec(-8, 8, 0.01))
replicate = convolve(truth, noise)

t = replication_threshold(math.sqrt(2))
print(f"\nthreshold for P <= 0.025 with SEM sqrt(2): {t:.4f}")
print("mass beyond it:", round(tail_mass(replicate, t, interpolate=True), 4))

direct = discretize_gaussian(1.96, math.sqrt(2),
                             RangeSpec(replicate.origin, replicate.hi, replicate.delta))
print("largest bin difference from direct N(1.96, 2):",
      f"{sup_norm_difference(replicate, direct):.1e}")

# the histogram goes straight to CSV
print(obs.to_csv(precision=6).splitlines()[396:401])
