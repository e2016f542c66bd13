"""
Reachability through a guard window
===================================

One edge leaves ``l0`` when ``1 <= x <= 2*p``.  The window is non-empty
exactly when ``p >= 1/2``, and the three reachability modes disagree on
how much of that they report.
"""
from pathlib import Path

import polyparam as pp
from polyparam.synthesis import INTEGER, REFERENCE

MODELS = Path(__file__).resolve().parent.parent / "models"
pta = pp.load_model(MODELS / "reach_guard.pta")
goal = pp.Reach(frozenset({"l1"}))

# %%
# The hull-keyed search keeps rational valuations: it answers 1/2 <= p <= 2.
hull = pp.synthesize(pp.SynthesisRequest(pta, goal))
print("hull     ", hull.to_text())

# %%
# The integer mode hulls the goal state itself and loses p = 1/2.
ief = pp.synthesize(pp.SynthesisRequest(pta, goal, INTEGER))
print("integer  ", ief.to_text())

# %%
# Without hulls the tree here is finite anyway, so both agree.
ref = pp.synthesize(pp.SynthesisRequest(pta, goal, REFERENCE))
print("reference", ref.to_text(), ref.status)

# %%
# Every integer valuation of the box, plus a few rational samples, against
# zone-graph reachability on the instantiated automaton.
report = pp.grid_check(pta, goal, hull.valuations, rational_samples=4)
print(report.to_table())
