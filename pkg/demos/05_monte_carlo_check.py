"""
Checking closed forms by brute force
====================================

Draw a true effect from the posterior, then a replicate around it, ten
million times.  The same seed always gives the same count.
"""

from replicalc import INFINITE, ReplicationQuery, StudyDesign
from replicalc.montecarlo import Mode, SimConfig, design_for_p, simulate, simulate_rival

first = StudyDesign(1.96, 10, 100)
cases = [
    ("same size", SimConfig(10_000_000, 42, first, ReplicationQuery(0.025, 100))),
    ("n2 = 200", SimConfig(10_000_000, 42, first, ReplicationQuery(0.025, 200))),
    ("n2 infinite", SimConfig(10_000_000, 42, first, ReplicationQuery(0.025, INFINITE))),
    ("same sign", SimConfig(10_000_000, 42, design_for_p(0.025), ReplicationQuery(0.025, 100),
                            Mode.SAME_SIGN)),
]
for name, cfg in cases:
    r = simulate(cfg)
    print(f"{name:12s} simulated {r.estimate:.5f} +- {r.std_error:.5f}"
          f"  closed form {r.closed_form:.5f}  ({r.z_discrepancy:.2f} SE)")

# the rival criterion demands |z| > 1.96 in the replicate alone
r = simulate_rival(SimConfig(1_000_000, 7, first, ReplicationQuery(0.025, 100)))
print(f"rival        simulated {r.estimate:.4f}  closed form {r.closed_form:.4f}")
