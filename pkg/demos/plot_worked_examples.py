"""
Worked examples: closed forms against direct numerics
=====================================================

Builds the two bundled GW states, reduces them to party pairs and to
one-vs-rest cuts, and compares the weight-based closed forms with the
Wootters formula and the pure-state concurrence.
"""
import math

from gwmono import bounds as bd
from gwmono.figures import fixture
from gwmono.measures import (
    coa_one_vs_rest_gw,
    coa_pair_gw,
    concurrence_bipartite,
    concurrence_pure,
    tqeeoa_gw,
)
from gwmono.states import build_gw_vector, party_weights, reduce_to_parties

# %%
# A four-qubit state with one site traced out
# -------------------------------------------
# Parties are sites 0, 1 and 2; site 3 is discarded. The party weights are
# the summed squared amplitudes of each party's sites.
spec, part = fixture("example1")
w = party_weights(spec, part)
print("party weights:", [round(float(x), 6) for x in w])

vec = build_gw_vector(spec)
for l in (1, 2):
    rho, dims = reduce_to_parties(vec, [part.parties[0], part.parties[l]])
    closed = coa_pair_gw(w, 0, l).value
    numeric = concurrence_bipartite(rho, dims).value
    print(f"A with party {l}: closed form {closed:.12f}, Wootters {numeric:.12f}")

rho, dims = reduce_to_parties(vec, [part.parties[0], part.parties[1] + part.parties[2]])
print(f"A against the rest: closed form {coa_one_vs_rest_gw(w, 0).value:.12f}, "
      f"numerical {concurrence_bipartite(rho, dims).value:.12f}, exact sqrt(41/50) {math.sqrt(41 / 50):.12f}")

# %%
# A tighter lower bound for a power of the CoA
# --------------------------------------------
# With gamma = 2 and delta = 1.3 the admissible range of l ends just above 1.4.
pairs = [coa_pair_gw(w, 0, l).value for l in (1, 2)]
region = bd.admissible_params(pairs, 2.0, 1.3)
print("admissible l:", region.thm1_l)

params = bd.BoundParams(alpha=4.0, gamma=2.0, omega=1.0, ell=1.3, delta=1.3)
report = bd.thm1_bound(*pairs, params)
print(f"alpha=4: lhs {report.lhs:.6f}, bound {report.rhs:.6f}, residual {report.residual:.3e}")

# %%
# A pure three-qubit state
# ------------------------
# Every site is kept, so the one-vs-rest cut is pure and its concurrence
# follows from the reduced spectrum alone.
spec, part = fixture("example2")
w = party_weights(spec, part)
vec = build_gw_vector(spec)
print(f"sqrt(5)/3 = {math.sqrt(5) / 3:.12f}; pure-state concurrence {concurrence_pure(vec, [0]).value:.12f}")
print(f"Tsallis-2 assistance of A against the rest: {tqeeoa_gw(w, 0, 2.0).value:.12f} (5/18 = {5 / 18:.12f})")
