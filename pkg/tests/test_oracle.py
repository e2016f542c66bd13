from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest

from polyparam.errors import BoxTooLarge, ModelError
from polyparam.kernel.linear import VarSpace
from polyparam.kernel.polyset import PolyhedralSet
from polyparam.model import ConcreteTA, instantiate
from polyparam.oracle import (
    ZoneGraph,
    bounded_reachable,
    grid_check,
    rational_grid,
    reachable,
    trace_equal,
    unavoidable,
)
from polyparam.oracle.dbm import DBM, enc
from polyparam.parser import parse_model
from polyparam.properties import Reach, TracePreserve, Unavoid
from polyparam.synthesis import INTEGER, SynthesisRequest, riaf, rief, synthesize

from randmodels import random_pta

P = VarSpace((), ("p",))
half = Fraction(1, 2)


def untimed_traces(ta: ConcreteTA, depth: int) -> set[tuple]:
    """Traces of at most ``depth`` steps, from the unextrapolated zone tree."""
    g = ZoneGraph(ta, extrapolate=False, max_depth=depth)
    if g.initial is None:
        return set()
    out = set()
    stack = [(g.initial, (ta.initial,))]
    while stack:
        node, trace = stack.pop()
        out.add(trace)
        for k, j in g.succ[node]:
            e = g.ta.edges[k]
            if len(trace) // 2 < depth:
                stack.append((j, trace + (e.action, e.target)))
    return out


# -- reachability and unavoidability ------------------------------------------------------


def test_reachability_examples(model):
    pta = model("reach_guard.pta")
    assert reachable(instantiate(pta, {"p": 0}), {"l0"})
    assert reachable(instantiate(pta, {"p": 1}), {"l1"})
    assert not reachable(instantiate(pta, {"p": Fraction(1, 4)}), {"l1"})
    assert reachable(instantiate(pta, {"p": half}), {"l1"})


def test_rescaled_guard(model):
    ta = instantiate(model("reach_guard.pta"), {"p": Fraction(1, 4)}).rescale()
    assert ta.scale == 2
    assert [a.value for a in ta.edges[0].guard] == [2, 1]


def test_unavoidability_examples(model):
    pta = model("unavoid_branch.pta")
    assert unavoidable(instantiate(pta, {"p": 1}), {"l0"})
    assert unavoidable(instantiate(pta, {"p": 0}), {"l1"})
    assert not unavoidable(instantiate(pta, {"p": 1}), {"l1"})
    assert not unavoidable(instantiate(pta, {"p": half}), {"l1"})


def test_reachable_sink_defeats_unavoidability(model):
    pta = model("unavoid_branch.pta")
    for v in (0, Fraction(1, 3), half, 1, 2):
        ta = instantiate(pta, {"p": v})
        if reachable(ta, {"l2"}):
            assert not unavoidable(ta, {"l1"})


def test_delay_forever_is_not_a_counterexample():
    pta = parse_model("clocks: x\nparams: p in [0, 1]\ninit: l0\nloc l0\nloc l1\n"
                      "edge l0 -> l1 on a\n")
    assert unavoidable(instantiate(pta, {"p": 0}), {"l1"})


def test_missing_the_window_deadlocks():
    pta = parse_model("clocks: x\nparams: p in [0, 1]\ninit: l0\nloc l0\nloc l1\n"
                      "edge l0 -> l1 on a when x <= p\n")
    assert not unavoidable(instantiate(pta, {"p": 1}), {"l1"})


def test_zeno_cycle_is_a_counterexample():
    pta = parse_model("clocks: x\nparams: p in [0, 1]\ninit: l0\nloc l0 inv: x <= 0\nloc l1\n"
                      "edge l0 -> l0 on a\nedge l0 -> l1 on b\n")
    assert not unavoidable(instantiate(pta, {"p": 0}), {"l1"})


def test_blocked_target_invariant_deadlocks():
    pta = parse_model("clocks: x\nparams: p in [0, 1]\ninit: l0\nloc l0 inv: x <= 1\nloc l1 inv: x <= p\n"
                      "loc l2\nedge l0 -> l1 on a when x <= 1\nedge l1 -> l2 on b\n")
    # from x in (p, 1] the edge to l1 is blocked and nothing else is enabled
    assert not unavoidable(instantiate(pta, {"p": 0}), {"l2"})
    assert unavoidable(instantiate(pta, {"p": 1}), {"l2"})


# -- cross-checks -----------------------------------------------------------------------


def integer_instances(count: int):
    out = []
    for seed in range(count):
        pta = random_pta(seed)
        for v in pta.domain.integer_points()[:3]:
            out.append((pta, instantiate(pta, v)))
    return out


def test_extrapolation_agrees_with_bounded_search(model):
    cases = [(pta, ta) for pta, ta in integer_instances(40)]
    pta = model("ratio_loop.pta")
    cases += [(pta, instantiate(pta, {"p1": a, "p2": b})) for a, b in ((1, 2), (2, 1), (3, 3))]
    for pta, ta in cases:
        depth = len(ZoneGraph(ta).nodes)
        for goal in pta.locations:
            assert reachable(ta, {goal}) == bounded_reachable(ta, {goal}, depth)


def test_larger_bounds_change_nothing():
    for pta, ta in integer_instances(40):
        g = ZoneGraph(ta)
        for k in (1, 2):
            h = ZoneGraph(ta, bound=g.bound + k)
            assert h.locations() == g.locations()


def test_trace_examples(model):
    guard = model("reach_guard.pta")
    one = instantiate(guard, {"p": 1})
    assert trace_equal(one, one)
    assert not trace_equal(one, instantiate(guard, {"p": Fraction(1, 4)}))
    ratio = model("ratio_loop.pta")
    ref = instantiate(ratio, {"p1": 1, "p2": 2})
    assert trace_equal(ref, instantiate(ratio, {"p1": 2, "p2": 3}))
    assert not trace_equal(ref, instantiate(ratio, {"p1": 2, "p2": 1}))


def test_ratio_traces_by_enumeration(model):
    ratio = model("ratio_loop.pta")
    ref = untimed_traces(instantiate(ratio, {"p1": 1, "p2": 2}), 8)
    assert untimed_traces(instantiate(ratio, {"p1": 2, "p2": 3}), 8) == ref
    assert untimed_traces(instantiate(ratio, {"p1": 2, "p2": 1}), 8) != ref


def test_trace_equality_matches_enumeration():
    for seed in range(25):
        pta = random_pta(seed)
        tas = [instantiate(pta, v) for v in pta.domain.integer_points()[:4]]
        for a, b in itertools.combinations(tas, 2):
            if trace_equal(a, b):
                assert untimed_traces(a, 5) == untimed_traces(b, 5)


def test_trace_equality_is_an_equivalence():
    for seed in range(25):
        pta = random_pta(seed)
        tas = [instantiate(pta, v) for v in pta.domain.integer_points()[:4]]
        eq = {(i, j): trace_equal(a, b) for (i, a), (j, b) in itertools.product(enumerate(tas), repeat=2)}
        for i, j, k in itertools.product(range(len(tas)), repeat=3):
            assert eq[i, i]
            assert eq[i, j] == eq[j, i]
            if eq[i, j] and eq[j, k]:
                assert eq[i, k]


def test_trace_needs_matching_locations(model):
    a = instantiate(model("reach_guard.pta"), {"p": 1})
    b = instantiate(model("unavoid_branch.pta"), {"p": 1})
    with pytest.raises(ModelError):
        trace_equal(a, b)


# -- grid checks --------------------------------------------------------------------------


def test_grid_for_the_guard(model):
    pta = model("reach_guard.pta")
    report = grid_check(pta, Reach(frozenset({"l1"})), rief(pta, {"l1"}).valuations)
    ints = [e for e in report.entries if e.integer]
    assert [dict(e.valuation)["p"] for e in ints] == [0, 1, 2]
    assert report.ok


def test_grid_for_the_sink_branch(model):
    pta = model("unavoid_branch.pta")
    prop = Unavoid(frozenset({"l1"}))
    points = [{"p": Fraction(1, 4)}, {"p": half}]
    report = grid_check(pta, prop, riaf(pta, {"l1"}).valuations, rational_points=points)
    assert report.ok
    quarter = report.find({"p": Fraction(1, 4)})
    assert quarter.in_result and quarter.oracle
    assert not report.find({"p": half}).in_result
    iaf = synthesize(SynthesisRequest(pta, prop, INTEGER)).valuations
    dense = grid_check(pta, prop, iaf, rational_samples=0, rational_points=points)
    assert [e.label() for e in dense.soundness_violations] == ["p=1/2"]
    assert not dense.integer_disagreements


def test_grid_covers_each_integer_point_once(model):
    pta = model("two_params.pta")
    report = grid_check(pta, Reach(frozenset({"l3"})), rief(pta, {"l3"}).valuations, rational_samples=6)
    ints = [e.valuation for e in report.entries if e.integer]
    assert len(ints) == len(set(ints)) == 9
    assert sum(not e.integer for e in report.entries) == 6
    body = json.loads(report.to_json())
    assert body["integer_points"] == 9 and body["disagreements"] == 0
    assert report.to_table().endswith("0 disagreement(s) over 15 valuation(s)")


def test_grid_flags_a_wrong_answer(model):
    pta = model("reach_guard.pta")
    wrong = PolyhedralSet.from_text(P, "0 <= p & p <= 2")
    report = grid_check(pta, Reach(frozenset({"l1"})), wrong, rational_samples=0)
    assert [e.label() for e in report.disagreements] == ["p=0"]
    assert report.disagreements[0].verdict == "unsound"
    empty = PolyhedralSet.empty(P)
    missing = grid_check(pta, Reach(frozenset({"l1"})), empty, rational_samples=0)
    assert {e.verdict for e in missing.disagreements} == {"missing"}


def test_trace_grid(model):
    pta = model("ratio_loop.pta")
    full = PolyhedralSet.from_text(VarSpace((), ("p1", "p2")), "0 <= p1 & p1 <= p2 & p2 <= 5")
    report = grid_check(pta, TracePreserve.at({"p1": 1, "p2": 2}), full, rational_samples=0)
    assert report.ok and len(report.entries) == 36


def test_box_too_large():
    pta = parse_model("clocks: x\nparams: p in [0, 200]; q in [0, 200]\ninit: l0\nloc l0\n")
    with pytest.raises(BoxTooLarge):
        grid_check(pta, Reach(frozenset({"l0"})), PolyhedralSet.empty(VarSpace((), ("p", "q"))))


def test_rational_grid_skips_integers(model):
    grid = rational_grid(model("reach_guard.pta"))
    assert all(Fraction(v["p"]).denominator > 1 for v in grid)
    assert {"p": Fraction(1, 3)} in grid and len(grid) == 10


# -- DBMs --------------------------------------------------------------------------------


def test_dbm_subtract_partitions():
    whole = DBM.universe(1).constrain(1, 0, enc(3, False))
    part = DBM.universe(1).constrain(1, 0, enc(1, True))
    pieces = whole.subtract(part)
    for k in range(0, 13):
        x = Fraction(k, 4)
        inside = sum(piece.contains([x]) for piece in pieces)
        assert inside == (whole.contains([x]) and not part.contains([x]))


def test_dbm_extrapolation_widens():
    z = DBM.zero(1).up().constrain(1, 0, enc(5, False)).constrain(0, 1, enc(-4, False))
    wide = z.close().extrapolate(2)
    assert wide.includes(z) and wide.contains([Fraction(100)])
