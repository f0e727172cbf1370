"""
Sampling decompositions and fuzzing the inequalities
====================================================

Brackets the concurrence and the CoA of mixed reductions by sampling
random pure-state decompositions, then runs short randomized sign checks
of every inequality family.
"""
import numpy as np

from gwmono import fuzz
from gwmono.figures import fixture
from gwmono.measures import coa_two_qubit, concurrence_wootters
from gwmono.oracle import SamplingConfig, certify_gw_closed_forms, coa_sampling_max, concurrence_sampling_min

# %%
# Brackets on the maximally mixed two-qubit state
# -----------------------------------------------
# Its concurrence is 0 and its CoA is 1; sampling approaches both from
# the inside.
rho = np.eye(4) / 4
cfg = SamplingConfig(trials=500, decomposition_size=4)
print(f"concurrence {concurrence_wootters(rho).value}, sampled min {concurrence_sampling_min(rho, (2, 2), cfg).value:.4f}")
print(f"CoA {coa_two_qubit(rho).value:.4f}, sampled max {coa_sampling_max(rho, (2, 2), cfg).value:.4f}")

# %%
# Certifying the closed forms of a worked example
# -----------------------------------------------
report = certify_gw_closed_forms(*fixture("example1"), cfg=SamplingConfig(trials=300))
print(report.to_text())

# %%
# Randomized sign checks
# ----------------------
# Instances that miss a theorem's hypotheses are counted as rejections.
for family in fuzz.FAMILIES:
    print(fuzz.run(family, 500, seed=1).line())
