"""
Predictions against observed replication rates
==============================================

Bundled frequencies from a large archive of trials, and one
multi-laboratory replication project.
"""

from replicalc.datasets import compare, emit_figure3, osc_prediction

report = compare()
print(" P (2-sided)  observed  same-size  rival")
for r in report.rows:
    print(f"{r.p_two_sided:11g}  {r.empirical:8.2f}  {r.predicted_eq5:9.3f}  {r.predicted_rival:5.3f}")
print(f"mean absolute error: same-size {report.mean_abs_error_eq5:.4f}, "
      f"rival {report.mean_abs_error_rival:.4f}")

o = osc_prediction()
print(f"\nreplication project: predicted {o.predicted:.3f}, observed {o.observed:.3f} "
      f"({o.replicated}/{o.studies}), CI {o.ci_low}-{o.ci_high}, inside: {o.inside_ci}")

# curve data for plotting elsewhere
csv_text = emit_figure3(step=0.5)
print()
print(csv_text)
