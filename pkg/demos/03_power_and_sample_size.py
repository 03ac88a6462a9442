"""
Planning a study: likelihood power against predictive power
===========================================================

Power at a fixed true effect treats the planning estimate as exact.
Predictive power averages over its uncertainty, which costs subjects.
"""

from replicalc import (
    PowerSpec, likelihood_power, parallel_total, predictive_power,
    required_n_likelihood, required_n_predictive, table2,
)
from replicalc.power import with_multiplicity

spec = PowerSpec(b=1.96, sd=10, alpha_two_sided=0.05, target=0.8)

n1 = required_n_likelihood(spec)
n2 = required_n_predictive(with_multiplicity(spec, 2))
n3 = required_n_predictive(with_multiplicity(spec, 3))
print(f"80% power:               n = {n1.n}  (exact {n1.exact:.2f})")
print(f"80% predictive, 2 var:   n = {n2.n}  (exact {n2.exact:.2f})")
print(f"80% predictive, 3 var:   n = {n3.n}  (exact {n3.exact:.2f})")
print("parallel groups need 4x:", parallel_total(n3.n), "in total")

print("\n   n   power  pred2  pred3  parallel")
for c in table2():
    print(f"{c.n:4d}  {c.power:.3f}  {c.predictive_2:.3f}  {c.predictive_3:.3f}  {c.parallel_total:8d}")

# power at a single n, for comparison
print("\nat n = 100:", round(likelihood_power(100, spec), 3),
      round(predictive_power(100, with_multiplicity(spec, 2)), 3))
