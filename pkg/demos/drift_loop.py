"""
Extrapolation on a drifting clock
=================================

Clock ``x`` is reset on every pass of the ``l1`` loop while ``y`` never
is, so ``y - x`` grows without bound.  Above the maximal constant the
exact value of ``y`` stops mattering.
"""
from pathlib import Path

import polyparam as pp
from polyparam.symbolic import extrapolate, extrapolate_clock, state_hull

MODELS = Path(__file__).resolve().parent.parent / "models"
pta = pp.load_model(MODELS / "drift_loop.pta")
sem = pp.Semantics(pta)
print("maximal constant:", sem.bound)

s = sem.successor(sem.initial_state(), sem.outgoing("l0")[0])
for n in range(1, 4):
    s = sem.successor(s, sem.outgoing("l1")[0])
    print(f"after {n} loop(s):", s.valuations)

# %%
# Splitting y at 1 leaves one piece with y <= 1 and one where y is free
# above 1; the parameter projection is unchanged.
low, high = extrapolate_clock(s.valuations, "y", 1, strict=True)
print("low: ", low)
print("high:", high)

# %%
# Full extrapolation followed by the integer hull gives the key the search
# compares on.  Keys stop changing after a couple of iterations.
print("key:", state_hull(extrapolate(s.valuations, sem.bound)))

result = pp.ritp(pta, {"p": 1}, record_trace=True)
print(result.to_text())
print(pp.export_dot(result.trace))
