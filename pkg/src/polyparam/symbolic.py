"""Parametric zones: initial state, successors, extrapolation and hull keys."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ModelError
from .kernel.linear import AtomicConstraint, LinearTerm, VarSpace
from .kernel.polyhedron import Polyhedron
from .kernel.polyset import PolyhedralSet
from .model import PTA, Edge, max_constant


@dataclass(frozen=True)
class SymbolicState:
    location: str
    valuations: Polyhedron

    def to_text(self) -> str:
        return f"{self.location} / {self.valuations.to_text()}"

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True, eq=False)
class StateKey:
    """Location plus the integer hull of the extrapolated valuations.

    Two keys match when locations agree and the hulls are the same set;
    equal text is only a shortcut.
    """

    location: str
    hull: PolyhedralSet
    text: str

    def matches(self, other: "StateKey") -> bool:
        if self.location != other.location:
            return False
        if self.text == other.text:
            return True
        return self.hull.set_equals(other.hull)

    def __str__(self):
        return f"{self.location} / {self.text}"


def _bound(clock: str, rel: str, value) -> AtomicConstraint:
    return AtomicConstraint.compare(LinearTerm.var(clock), rel, value)


def extrapolate_clock(
    c: Polyhedron, clock: str, bound: int, strict: bool = False
) -> list[Polyhedron]:
    """Split at ``clock = bound``; above it the clock is forgotten (kept nonnegative).

    With ``strict`` the upper piece uses ``clock > bound`` instead of
    ``clock >= bound``.
    """
    above_rel = ">" if strict else ">="
    low = c.intersect([_bound(clock, "<=", bound)])
    high = c.intersect([_bound(clock, above_rel, bound)])
    out = [low]
    if not high.is_empty():
        out.append(high.cylindrify(clock).intersect([_bound(clock, above_rel, bound)]))
    return out


def extrapolate(
    c: Polyhedron | PolyhedralSet,
    bound: int,
    clocks: Sequence[str] | None = None,
    strict: bool = False,
) -> PolyhedralSet:
    """Apply :func:`extrapolate_clock` for each clock in turn, disjunct-wise."""
    parts = list(c.disjuncts) if isinstance(c, PolyhedralSet) else [c]
    space = parts[0].space if parts else c.space
    for x in space.clocks if clocks is None else clocks:
        parts = [q for p in parts for q in extrapolate_clock(p, x, bound, strict)]
    return PolyhedralSet(space, parts)


def state_hull(c: Polyhedron | PolyhedralSet) -> Polyhedron | PolyhedralSet:
    """Integer hull of a state, taken per disjunct.

    A non-closed disjunct may have no integer clock points while still
    holding every region of its integer-parameter slices; its hull is taken
    over clocks in ``(1/(k+1)) Z`` for ``k`` clocks, which meets every
    region of a zone with integer constants.
    """
    if isinstance(c, PolyhedralSet):
        return c.map(state_hull)
    if c.is_closed():
        return c.integer_hull()
    fine = len(c.space.clocks) + 1
    return c.integer_hull({x: fine for x in c.space.clocks})


class Semantics:
    """Symbolic semantics of one PTA, with the guard and invariant polyhedra
    precomputed and hull keys cached."""

    def __init__(self, pta: PTA, bound: int | None = None, strict_extrapolation: bool = False):
        self.pta = pta
        self.space: VarSpace = pta.space
        self.bound = max_constant(pta) if bound is None else bound
        self.strict = strict_extrapolation
        self.domain = Polyhedron(self.space, pta.domain.atoms())
        self.param_domain = Polyhedron(self.space.param_space(), pta.domain.atoms())
        self._inv = {
            loc: Polyhedron(self.space, [a.to_atom() for a in pta.invariant(loc)])
            for loc in pta.locations
        }
        self._guard = {e: Polyhedron(self.space, [a.to_atom() for a in e.guard]) for e in pta.edges}
        self._out = {loc: pta.outgoing(loc) for loc in pta.locations}
        self._keys: dict[tuple[str, str], StateKey] = {}
        self.key_hits = 0

    def invariant(self, loc: str) -> Polyhedron:
        return self._inv[loc]

    def guard(self, e: Edge) -> Polyhedron:
        return self._guard[e]

    def outgoing(self, loc: str) -> list[Edge]:
        return self._out[loc]

    def initial_state(self) -> SymbolicState | None:
        """Initial state, or ``None`` when no parameter valuation admits it."""
        zero = Polyhedron(self.space, [_bound(x, "=", 0) for x in self.space.clocks])
        inv = self._inv[self.pta.initial]
        c = zero.intersect(self.domain).intersect(inv)
        c = c.time_elapse().intersect(inv)
        if c.is_empty():
            return None
        return SymbolicState(self.pta.initial, c)

    def successor(self, s: SymbolicState, e: Edge) -> SymbolicState | None:
        if e.source != s.location:
            raise ModelError(f"edge {e} does not leave {s.location}")
        inv = self._inv[e.target]
        c = s.valuations.intersect(self._guard[e])
        if c.is_empty():
            return None
        c = c.reset(e.resets).intersect(inv)
        if c.is_empty():
            return None
        c = c.time_elapse().intersect(inv)
        return SymbolicState(e.target, c)

    def successors(self, s: SymbolicState) -> list[tuple[Edge, SymbolicState]]:
        out = []
        for e in self._out[s.location]:
            t = self.successor(s, e)
            if t is not None:
                out.append((e, t))
        return out

    def extrapolate(self, c: Polyhedron) -> PolyhedralSet:
        return extrapolate(c, self.bound, strict=self.strict)

    def hull_key(self, s: SymbolicState) -> StateKey:
        cache = (s.location, s.valuations.to_text())
        key = self._keys.get(cache)
        if key is not None:
            self.key_hits += 1
            return key
        hull = state_hull(self.extrapolate(s.valuations))
        key = StateKey(s.location, hull, hull.to_text())
        self._keys[cache] = key
        return key

    def raw_key(self, s: SymbolicState) -> StateKey:
        """Key on the state itself, for the non-hull reference algorithms."""
        hull = PolyhedralSet.of(s.valuations)
        return StateKey(s.location, hull, hull.to_text())


def initial_state(pta: PTA) -> SymbolicState | None:
    return Semantics(pta).initial_state()


def successor(pta: PTA, s: SymbolicState, e: Edge) -> SymbolicState | None:
    return Semantics(pta).successor(s, e)


def hull_key(s: SymbolicState, bound: int) -> StateKey:
    hull = state_hull(extrapolate(s.valuations, bound))
    return StateKey(s.location, hull, hull.to_text())


def is_v_compatible(s: SymbolicState | Polyhedron, valuation: Mapping[str, object]) -> bool:
    c = s.valuations if isinstance(s, SymbolicState) else s
    proj = c.project_to_params()
    return proj.contains({p: Fraction(valuation[p]) for p in proj.space.names})


def instantiate_polyhedron(c: Polyhedron | PolyhedralSet, valuation: Mapping[str, object]):
    """Fix the parameters; the result lives in the clock-only space."""
    if isinstance(c, PolyhedralSet):
        space = c.space.clock_space()
        return PolyhedralSet(space, [d.substitute(valuation) for d in c.disjuncts])
    return c.substitute(valuation)


def passed_contains(passed: Iterable[StateKey], key: StateKey) -> StateKey | None:
    for k in passed:
        if k.matches(key):
            return k
    return None
