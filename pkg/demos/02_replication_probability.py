"""
How likely is a repeat study to reach P <= 0.025?
=================================================

A crossover trial with 100 subjects saw a mean difference of 1.96 mmHg
(sd 10), so z = 1.96 and the one-sided P is 0.025.
"""

from replicalc import (
    INFINITE, ReplicationQuery, StudyDesign, p_rep, prob_replication,
    prob_replication_from_p, prob_replication_infinite_from_p,
)

first = StudyDesign(b=1.96, s=10, n=100)

# a replicate of the same size: both uncertainties add, variance doubles
for n2 in (50, 100, 200, 1000, INFINITE):
    r = prob_replication(first, ReplicationQuery(p3=0.025, n2=n2))
    print(f"n2 = {n2!s:>8}: {r.probability:.3f}  ({r.formula.name})")

# the same numbers straight from the P value
print("from P1 = 0.025:", round(prob_replication_from_p(0.025).probability, 3))
print("from P1 = 0.0025, n2 infinite:",
      round(prob_replication_infinite_from_p(0.0025).probability, 4))

# a weaker sense of replication: the effect merely keeps its sign
print("same sign, same size:", round(p_rep(0.025).probability, 3))
print("same sign, n2 infinite:", round(p_rep(0.025, infinite_n2=True).probability, 3))
