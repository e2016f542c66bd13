"""Parameter synthesis by depth-first exploration of the symbolic state tree.

Three variants share one control flow:

``hull``
    Branches are cut when the integer hull of the extrapolated state was
    already seen on the current path.  Always terminates on bounded PTAs.
``reference``
    Branches are cut on repeated symbolic states only; may diverge, so a
    state budget is mandatory.
``integer``
    Like ``hull`` but goal and blocking sets use integer hulls of the
    states; only meaningful over integer parameter valuations.

Recursion is driven by an explicit stack: each frame is a generator that
yields the frame of a child and receives the child's result.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Generator

from .errors import ModelError, StateCeilingExceeded, UnsupportedInput
from .kernel.polyhedron import Polyhedron
from .kernel.polyset import PolyhedralSet, nonnegative_orthant
from .model import PTA, invariant_blocked_edges, nondeterministic_choices, validate
from .properties import Property, Reach, TracePreserve, Unavoid
from .symbolic import Semantics, StateKey, SymbolicState, state_hull

HULL, REFERENCE, INTEGER = "hull", "reference", "integer"
VARIANTS = (HULL, REFERENCE, INTEGER)
COMPLETE, EXHAUSTED = "complete", "budget-exhausted"

CEILING_ENV = "POLYPARAM_STATE_CEILING"
DEFAULT_CEILING = 10_000
DEFAULT_BUDGET = 10_000
COALESCE_AT = 6


@dataclass(frozen=True)
class SynthesisRequest:
    pta: PTA
    property: Property
    variant: str = HULL
    budget: int | None = None
    bound: int | None = None
    record_trace: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ModelError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.budget is not None and self.variant != REFERENCE:
            raise ModelError("a state budget only applies to the reference variant")
        if isinstance(self.property, (Reach, Unavoid)) and not self.property.goals:
            raise ModelError("goal set must not be empty")
        if isinstance(self.property, TracePreserve):
            if self.variant == INTEGER:
                raise UnsupportedInput("the integer variant covers EF and AF only")
            if self.variant == HULL and not self.property.is_integral():
                raise UnsupportedInput("trace preservation needs an integer reference valuation")


@dataclass
class Stats:
    states: int = 0
    key_hits: int = 0
    passed_hits: int = 0
    max_keys_per_location: int = 0
    ceiling: int = 0
    bound: int = 0
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "states": self.states,
            "key_cache_hits": self.key_hits,
            "passed_hits": self.passed_hits,
            "max_keys_per_location": self.max_keys_per_location,
            "key_ceiling": self.ceiling,
            "max_constant": self.bound,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class Exploration:
    """The explored tree: nodes in depth-first order, tree edges, and cut-offs
    pointing at the ancestor whose key matched."""

    nodes: list[tuple[int, str, str]] = field(default_factory=list)
    edges: list[tuple[int, int, str]] = field(default_factory=list)
    cuts: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class SynthesisResult:
    valuations: PolyhedralSet
    status: str
    stats: Stats
    trace: Exploration | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def to_text(self) -> str:
        return self.valuations.to_text()

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "valuations": self.valuations.to_json(),
            "text": self.valuations.to_text(),
            "stats": self.stats.to_json(),
            "warnings": list(self.warnings),
        }


def state_ceiling(pta: PTA, bound: int) -> int:
    """Safety cap on distinct hull keys per location.

    The hulls are determined by their lattice points in a finite box plus a
    choice of recession directions, which yields a (huge) finite bound; the
    configured cap is used whenever it is smaller.
    """
    env = os.environ.get(CEILING_ENV)
    cap = DEFAULT_CEILING
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ModelError(f"{CEILING_ENV} must be an integer, got {env!r}") from None
    nclk = len(pta.clocks)
    points = (bound + 2) ** nclk
    for _, lo, hi in pta.domain.bounds:
        points *= hi - lo + 1
    log2_bound = (2 ** nclk) * (points + 2 ** (nclk + 1))
    if log2_bound < math.log2(cap):
        return 2 ** log2_bound
    return cap


Frame = Generator["Frame", PolyhedralSet, PolyhedralSet]


class _Explorer:
    def __init__(self, req: SynthesisRequest):
        self.req = req
        self.variant = req.variant
        self.sem = Semantics(req.pta, req.bound)
        self.pspace = req.pta.space.param_space()
        self.orthant = PolyhedralSet.of(nonnegative_orthant(self.pspace))
        self.empty = PolyhedralSet.empty(self.pspace)
        self.budget = req.budget if req.budget is not None else (
            DEFAULT_BUDGET if req.variant == REFERENCE else None
        )
        self.stats = Stats(bound=self.sem.bound, ceiling=state_ceiling(req.pta, self.sem.bound))
        self.exhausted = False
        self.trace = Exploration() if req.record_trace else None
        self._seen: dict[str, set[str]] = {}

    # -- bookkeeping --------------------------------------------------------------

    def visit(self, s: SymbolicState, parent: int | None, action: str | None) -> int:
        node = self.stats.states
        self.stats.states += 1
        if self.trace is not None:
            self.trace.nodes.append((node, s.location, s.valuations.to_text()))
            if parent is not None:
                self.trace.edges.append((parent, node, action))
        return node

    def may_expand(self) -> bool:
        if self.budget is not None and self.stats.states >= self.budget:
            self.exhausted = True
            return False
        return True

    def key(self, s: SymbolicState) -> StateKey:
        if self.variant == REFERENCE:
            return self.sem.raw_key(s)
        key = self.sem.hull_key(s)
        seen = self._seen.setdefault(s.location, set())
        if key.text not in seen:
            seen.add(key.text)
            self.stats.max_keys_per_location = max(self.stats.max_keys_per_location, len(seen))
            if len(seen) > self.stats.ceiling:
                raise StateCeilingExceeded(
                    f"more than {self.stats.ceiling} distinct keys at location {s.location}"
                )
        return key

    def lookup(self, passed, key: StateKey, node: int) -> bool:
        for k, n in passed:
            if k.matches(key):
                self.stats.passed_hits += 1
                if self.trace is not None:
                    self.trace.cuts.append((node, n))
                return True
        return False

    def proj(self, c: Polyhedron) -> PolyhedralSet:
        return PolyhedralSet.of(c.project_to_params())

    def goal_value(self, s: SymbolicState) -> PolyhedralSet:
        c = state_hull(s.valuations) if self.variant == INTEGER else s.valuations
        return self.proj(c)

    @staticmethod
    def tidy(k: PolyhedralSet) -> PolyhedralSet:
        return k.coalesce() if len(k) >= COALESCE_AT else k

    # -- frames -------------------------------------------------------------------

    def reach(self, s: SymbolicState, goals, passed, node: int) -> Frame:
        if s.location in goals:
            return self.goal_value(s)
        k = self.empty
        key = self.key(s)
        if self.lookup(passed, key, node):
            return k
        inner = passed + ((key, node),)
        for e, t in self.sem.successors(s):
            if not self.may_expand():
                break
            child = self.visit(t, node, e.action)
            k = self.tidy(k.union((yield self.reach(t, goals, inner, child))))
        return k

    def unavoid(self, s: SymbolicState, goals, passed, node: int) -> Frame:
        if s.location in goals:
            return self.goal_value(s)
        key = self.key(s)
        if self.lookup(passed, key, node):
            return self.empty
        c = s.valuations
        k = self.proj(c)
        live = PolyhedralSet.empty(c.space)
        inner = passed + ((key, node),)
        for e, t in self.sem.successors(s):
            if not self.may_expand():
                break
            child = self.visit(t, node, e.action)
            good = yield self.unavoid(t, goals, inner, child)
            seen = state_hull(t.valuations) if self.variant == INTEGER else t.valuations
            block = self.proj(seen).complement(self.orthant)
            k = self.tidy(k.intersect(good.union(block)))
            live = live.union(c.intersect(self.sem.guard(e)).time_past())
        dead = PolyhedralSet.of(c).difference(live).project_to_params()
        return self.tidy(k.difference(dead))

    def preserve(self, s: SymbolicState, ref: dict, passed, node: int) -> Frame:
        k = self.orthant
        proj = s.valuations.project_to_params()
        if proj.contains(ref):
            if self.variant == REFERENCE:
                k = k.intersect(proj)
            else:
                k = k.intersect(self.sem.hull_key(s).hull.project_to_params())
            key = self.key(s)
            if self.lookup(passed, key, node):
                return k
            inner = passed + ((key, node),)
            for e, t in self.sem.successors(s):
                if not self.may_expand():
                    break
                child = self.visit(t, node, e.action)
                k = self.tidy(k.intersect((yield self.preserve(t, ref, inner, child))))
        else:
            outside = PolyhedralSet.of(proj).complement(self.orthant)
            if self.variant != REFERENCE:
                outside = outside.integer_hull()
            k = k.intersect(outside)
        return k


def _drive(root: Frame) -> PolyhedralSet:
    stack = [root]
    value = None
    while stack:
        try:
            child = stack[-1].send(value)
        except StopIteration as stop:
            stack.pop()
            value = stop.value
            continue
        stack.append(child)
        value = None
    return value


def synthesize(req: SynthesisRequest) -> SynthesisResult:
    """Run the requested algorithm; the result is clipped to the parameter box."""
    start = time.perf_counter()
    warnings = validate(req.pta)
    ex = _Explorer(req)
    prop = req.property
    if isinstance(prop, TracePreserve):
        missing = [p for p in req.pta.params if p not in prop.valuation]
        if missing:
            raise ModelError(f"reference valuation misses {', '.join(missing)}")
        ref = {p: prop.valuation[p] for p in req.pta.params}
        if not req.pta.domain.contains(ref):
            raise ModelError("reference valuation lies outside the parameter domain")
    if isinstance(prop, Unavoid):
        for e in invariant_blocked_edges(req.pta):
            warnings.append(
                f"edge {e} may be enabled while its target invariant blocks it; "
                "liveness is judged on the guard alone"
            )
    if isinstance(prop, TracePreserve):
        for loc, action in nondeterministic_choices(req.pta):
            warnings.append(
                f"several edges leave {loc} on {action}: integer completeness "
                "is only guaranteed for deterministic automata"
            )
    s0 = ex.sem.initial_state()
    if s0 is None:
        warnings.append("initial state is empty")
        if isinstance(prop, TracePreserve):
            k = ex.orthant
        else:
            k = ex.empty
    else:
        root = ex.visit(s0, None, None)
        if isinstance(prop, Reach):
            frame = ex.reach(s0, prop.goals, (), root)
        elif isinstance(prop, Unavoid):
            frame = ex.unavoid(s0, prop.goals, (), root)
        else:
            frame = ex.preserve(s0, ref, (), root)
        k = _drive(frame)
    box = PolyhedralSet.of(ex.sem.param_domain)
    k = k.intersect(box).coalesce()
    ex.stats.key_hits = ex.sem.key_hits
    ex.stats.seconds = time.perf_counter() - start
    status = EXHAUSTED if ex.exhausted else COMPLETE
    if ex.exhausted:
        warnings.append(
            f"state budget of {ex.budget} exhausted: the result is partial, not a complete answer"
        )
    return SynthesisResult(k, status, ex.stats, ex.trace, warnings)


def rief(pta: PTA, goals, **kw) -> SynthesisResult:
    return synthesize(SynthesisRequest(pta, Reach(frozenset(goals)), HULL, **kw))


def riaf(pta: PTA, goals, **kw) -> SynthesisResult:
    return synthesize(SynthesisRequest(pta, Unavoid(frozenset(goals)), HULL, **kw))


def ritp(pta: PTA, reference, **kw) -> SynthesisResult:
    return synthesize(SynthesisRequest(pta, TracePreserve.at(reference), HULL, **kw))


ALGORITHMS = {
    "rief": (Reach, HULL),
    "riaf": (Unavoid, HULL),
    "ritp": (TracePreserve, HULL),
    "ef": (Reach, REFERENCE),
    "af": (Unavoid, REFERENCE),
    "tp": (TracePreserve, REFERENCE),
    "ief": (Reach, INTEGER),
    "iaf": (Unavoid, INTEGER),
}


def export_dot(trace: Exploration) -> str:
    """Graphviz text for an exploration; byte-stable for equal inputs."""
    out = ["digraph exploration {", "  node [shape=box, fontname=monospace];"]
    for node, loc, text in trace.nodes:
        label = f"{loc} / {text}".replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'  n{node} [label="{label}"];')
    for src, dst, action in trace.edges:
        out.append(f'  n{src} -> n{dst} [label="{action}"];')
    for node, target in trace.cuts:
        out.append(f'  n{node} -> n{target} [style=dashed, label="passed"];')
    out.append("}")
    return "\n".join(out) + "\n"
