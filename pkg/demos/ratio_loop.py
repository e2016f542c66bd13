"""
A loop that never repeats a state
=================================

Two clocks take turns being reset.  Each round tightens the relation
between them, so the plain symbolic search sees a new state forever.
Keying on integer hulls cuts the loop after a few rounds.
"""
import itertools
from pathlib import Path

import polyparam as pp
from polyparam.synthesis import REFERENCE

MODELS = Path(__file__).resolve().parent.parent / "models"
pta = pp.load_model(MODELS / "ratio_loop.pta")

# %%
# After k rounds the states at l1 carry x2 - x1 >= k*(p1 - p2).
sem = pp.Semantics(pta)
s = sem.initial_state()
for k in range(1, 4):
    s = sem.successor(sem.successor(s, sem.outgoing("l1")[0]), sem.outgoing("l1b")[0])
    print(k, s.valuations)

# %%
# The reference search runs out of budget; the hull search terminates.
prop = pp.TracePreserve.at({"p1": 1, "p2": 2})
ref = pp.synthesize(pp.SynthesisRequest(pta, prop, REFERENCE, budget=300))
print(ref.status, ref.stats.states, "states")
hull = pp.ritp(pta, {"p1": 1, "p2": 2})
print(hull.status, hull.stats.states, "states:", hull.to_text())

# %%
# Which integer valuations share the trace set of (1, 2)?
base = pp.instantiate(pta, {"p1": 1, "p2": 2})
for p2 in reversed(range(6)):
    row = ""
    for p1 in range(6):
        same = pp.trace_equal(base, pp.instantiate(pta, {"p1": p1, "p2": p2}))
        row += "#" if same else "."
    print(f"p2={p2}  {row}")
