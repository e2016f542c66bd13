"""
Unavoidability and the density trap
===================================

From ``l0`` an unguarded edge goes to the goal ``l1``; a second edge, open
when ``1 <= x <= 2*p``, goes to the sink ``l2``.  Every run reaches
``l1`` only while that second window stays shut.
"""
from fractions import Fraction
from pathlib import Path

import polyparam as pp
from polyparam.synthesis import INTEGER

MODELS = Path(__file__).resolve().parent.parent / "models"
pta = pp.load_model(MODELS / "unavoid_branch.pta")
goal = pp.Unavoid(frozenset({"l1"}))

exact = pp.synthesize(pp.SynthesisRequest(pta, goal))
coarse = pp.synthesize(pp.SynthesisRequest(pta, goal, INTEGER))
print("hull   ", exact.to_text())
print("integer", coarse.to_text())

# %%
# Both answers agree on integers.  Read densely, the integer answer claims
# p = 1/2, where the sink window is the single point x = 1.
half = {"p": Fraction(1, 2)}
print("oracle at p = 1/2:", pp.unavoidable(pp.instantiate(pta, half), {"l1"}))
report = pp.grid_check(pta, goal, coarse.valuations, rational_samples=0, rational_points=[half])
for e in report.disagreements:
    print("disagreement:", e.label(), e.verdict)
