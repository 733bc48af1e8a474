"""
When a transform changes sign twice
===================================

``w(x) = sum_n f_n(x) K_n(x)`` keeps at most one sign change when the
kernel is TP2 or RR2 and ``f`` has the right monotonicity.  Here ``f`` rises
in x instead of falling, and ``w`` picks up a second change.
"""
from stochord import counterexample, proposition_scenarios
from stochord.variation import COUNTEREXAMPLES, canonical_grid, verify_proposition

###############################################################################
# The partial sums agree with the closed form to about 1e-12.
for case in ("I", "III"):
    res = counterexample(case)
    print(f"case {case}: {res.signs}, max error {res.max_abs_error:.2e}")
    for lo, hi in res.signs.change_locations:
        print(f"    sign change in [{lo:.4f}, {hi:.4f}]")

###############################################################################
# For contrast, a scenario that meets every hypothesis changes sign once.
rep = proposition_scenarios()["3.1a"].run()
print(rep.to_text())
w = rep.transform.w
print("w at the ends of the grid:", w[0], w[-1], "  zero near x =",
      rep.signs.change_locations[0][0])

###############################################################################
# Feeding the case I inputs to the Proposition 3.1 checker flags the
# hypothesis that fails.
f, K, _, _ = COUNTEREXAMPLES["I"]
print(verify_proposition("3.1", f, K, canonical_grid("I"), n_max=60000).to_text())
