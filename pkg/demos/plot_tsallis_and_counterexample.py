"""
Tsallis-q entanglement: monogamy for GW states, failure beyond them
===================================================================

Evaluates the Tsallis-q monogamy residual of a GW state over both
intervals of valid q, then checks a 3x2x2 state whose pair reductions
are rank-two but whose residual turns negative.
"""
import numpy as np

from gwmono import bounds as bd
from gwmono.figures import fixture
from gwmono.measures import Q_INTERVALS, q_grid, tq_rank2_counterexample
from gwmono.oracle import counterexample_numeric
from gwmono.states import party_weights

# %%
# Residual surface for a GW state
# -------------------------------
w = party_weights(*fixture("example2"))
for lo, hi in Q_INTERVALS:
    qs = np.linspace(lo, hi, 5)
    worst = min(bd.tq_monogamy_residual(w, 0, q, a) for q in qs for a in np.linspace(2, 5, 7))
    print(f"q in [{lo:.4f}, {hi:.4f}]: smallest residual {worst:.3e}")

# %%
# The 3x2x2 state
# ---------------
for q in (Q_INTERVALS[0][0], 2.0, 3.0, Q_INTERVALS[1][1]):
    v = tq_rank2_counterexample(q)
    print(f"q={q:.4f}: lhs {v.lhs:.6f}, pair values {v.t_ab:.6f} each, residual bound {v.residual_bound:.6f}")

# %%
# Sampled decomposition members confirm the spectra behind these numbers.
report = counterexample_numeric(q_grid(20))
print(f"{len(report.checks)} checks, {len(report.failures)} failures")
