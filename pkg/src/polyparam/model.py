"""Bounded parametric timed automata and their instantiations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, lcm
from typing import Iterable, Mapping

from .errors import ModelError, ValidationError
from .kernel.linear import EQ, LE, AtomicConstraint, LinearTerm, VarSpace
from .kernel.polyhedron import Polyhedron

CLOCK_RELATIONS = ("<", "<=", "=", ">=", ">")
_FLIP = {"<": ">", "<=": ">=", "=": "=", ">=": "<=", ">": "<"}


@dataclass(frozen=True)
class ClockAtom:
    """``clock relation bound`` where ``bound`` only mentions parameters."""

    clock: str
    relation: str
    bound: LinearTerm

    def __post_init__(self):
        if self.relation not in CLOCK_RELATIONS:
            raise ModelError(f"unknown relation {self.relation!r}")

    @classmethod
    def from_atom(cls, atom: AtomicConstraint, clocks: Iterable[str]) -> "ClockAtom":
        """Rewrite ``term rel 0`` as ``clock rel' bound``; the term must be simple."""
        clocks = set(clocks)
        used = [v for v in atom.term.coeffs if v in clocks]
        if len(used) != 1:
            raise ModelError(
                f"'{atom}' is not a simple clock constraint (needs exactly one clock, found {len(used)})"
            )
        x = used[0]
        c = atom.term.coeffs[x]
        if abs(c) != 1:
            raise ModelError(f"clock {x} must have coefficient 1 in '{atom}'")
        rest = atom.term - LinearTerm({x: c})
        bound = -rest if c > 0 else rest
        rel = atom.relation if c > 0 else _FLIP[atom.relation]
        if not bound.is_integral():
            raise ModelError(f"bound of '{atom}' must have integer coefficients")
        return cls(x, rel, bound)

    def to_atom(self) -> AtomicConstraint:
        return AtomicConstraint.compare(LinearTerm.var(self.clock), self.relation, self.bound)

    def to_text(self, params: Iterable[str] = ()) -> str:
        return f"{self.clock} {self.relation} {self.bound.to_text(params)}"

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    action: str
    guard: tuple[ClockAtom, ...] = ()
    resets: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.source} -{self.action}-> {self.target}"


@dataclass(frozen=True)
class ParamDomain:
    """Closed integer interval per parameter, in declaration order."""

    bounds: tuple[tuple[str, int, int], ...] = ()

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b[0] for b in self.bounds)

    def interval(self, name: str) -> tuple[int, int]:
        for n, lo, hi in self.bounds:
            if n == name:
                return lo, hi
        raise ModelError(f"parameter {name!r} has no bounds")

    def contains(self, valuation: Mapping[str, object]) -> bool:
        return all(lo <= Fraction(valuation[n]) <= hi for n, lo, hi in self.bounds)

    def atoms(self) -> list[AtomicConstraint]:
        out = []
        for n, lo, hi in self.bounds:
            out.append(AtomicConstraint.compare(LinearTerm.var(n), ">=", lo))
            out.append(AtomicConstraint.compare(LinearTerm.var(n), "<=", hi))
        return out

    def integer_points(self) -> list[dict[str, int]]:
        ranges = [range(lo, hi + 1) for _, lo, hi in self.bounds]
        return [dict(zip(self.names, vals)) for vals in itertools.product(*ranges)]


@dataclass(frozen=True)
class PTA:
    clocks: tuple[str, ...]
    params: tuple[str, ...]
    domain: ParamDomain
    locations: tuple[str, ...]
    initial: str
    invariants: Mapping[str, tuple[ClockAtom, ...]] = field(default_factory=dict)
    edges: tuple[Edge, ...] = ()

    @property
    def space(self) -> VarSpace:
        return VarSpace(self.clocks, self.params)

    @property
    def actions(self) -> tuple[str, ...]:
        return tuple(sorted({e.action for e in self.edges}))

    def invariant(self, loc: str) -> tuple[ClockAtom, ...]:
        return tuple(self.invariants.get(loc, ()))

    def outgoing(self, loc: str) -> list[Edge]:
        return [e for e in self.edges if e.source == loc]

    def __hash__(self):
        return hash((self.clocks, self.params, self.locations, self.initial, self.edges))


def validate(pta: PTA) -> list[str]:
    """Check structural well-formedness.

    Raises :class:`ValidationError` listing every problem found; returns a
    list of warnings otherwise.
    """
    errors: list[str] = []
    names = pta.clocks + pta.params
    if len(set(names)) != len(names):
        errors.append("clock and parameter names must be distinct")
    if len(set(pta.locations)) != len(pta.locations):
        errors.append("duplicate location names")
    if pta.initial not in pta.locations:
        errors.append(f"initial location {pta.initial!r} is not declared")
    bounded = {}
    for n, lo, hi in pta.domain.bounds:
        if n not in pta.params:
            errors.append(f"bounds given for unknown parameter {n!r}")
        if not (isinstance(lo, int) and isinstance(hi, int)) or lo < 0 or hi < 0:
            errors.append(f"bounds of {n} must be nonnegative integers")
        elif lo > hi:
            errors.append(f"empty interval [{lo}, {hi}] for {n}")
        bounded[n] = (lo, hi)
    for p in pta.params:
        if p not in bounded:
            errors.append(f"parameter {p!r} has no bounds")

    def check_atoms(atoms, where):
        for a in atoms:
            if a.clock not in pta.clocks:
                errors.append(f"{where}: unknown clock {a.clock!r}")
            for v in a.bound.coeffs:
                if v not in pta.params:
                    errors.append(f"{where}: '{a}' uses {v!r}, which is not a parameter")
            if not a.bound.is_integral():
                errors.append(f"{where}: '{a}' has a non-integer coefficient")

    for loc, atoms in pta.invariants.items():
        if loc not in pta.locations:
            errors.append(f"invariant for unknown location {loc!r}")
        check_atoms(atoms, f"invariant of {loc}")
    for e in pta.edges:
        where = f"edge {e}"
        for end in (e.source, e.target):
            if end not in pta.locations:
                errors.append(f"{where}: unknown location {end!r}")
        for r in e.resets:
            if r not in pta.clocks:
                errors.append(f"{where}: reset of unknown clock {r!r}")
        check_atoms(e.guard, where)
    if errors:
        raise ValidationError(errors)

    warnings = []
    start = Polyhedron(
        pta.space,
        [AtomicConstraint(LinearTerm.var(x), EQ) for x in pta.clocks]
        + pta.domain.atoms()
        + [a.to_atom() for a in pta.invariant(pta.initial)],
    )
    if start.is_empty():
        warnings.append(
            f"the zero clock valuation violates the invariant of {pta.initial} "
            "for every parameter valuation: the initial state is empty"
        )
    return warnings


def nondeterministic_choices(pta: PTA) -> list[tuple[str, str]]:
    """``(location, action)`` pairs labelling more than one outgoing edge."""
    count: dict[tuple[str, str], int] = {}
    for e in pta.edges:
        count[(e.source, e.action)] = count.get((e.source, e.action), 0) + 1
    return sorted(k for k, n in count.items() if n > 1)


def invariant_blocked_edges(pta: PTA) -> list[Edge]:
    """Edges whose guard can hold while the reset valuation violates the
    target invariant, so an enabled guard does not guarantee a step."""
    space = pta.space
    base = Polyhedron(
        space,
        pta.domain.atoms()
        + [AtomicConstraint(-LinearTerm.var(x), LE) for x in pta.clocks],
    )
    out = []
    for e in pta.edges:
        enabled = base.intersect(
            [a.to_atom() for a in pta.invariant(e.source) + e.guard]
        )
        zero = {x: 0 for x in e.resets}
        after = Polyhedron(space, [a.to_atom().substitute(zero) for a in pta.invariant(e.target)])
        if not after.includes(enabled):
            out.append(e)
    return out


def atom_maximum(bound: LinearTerm, domain: ParamDomain) -> Fraction:
    """Largest value of ``bound`` over the parameter box."""
    total = bound.constant
    for v, c in bound.coeffs.items():
        lo, hi = domain.interval(v)
        total += c * (hi if c > 0 else lo)
    return total


def max_constant(pta: PTA) -> int:
    """Extrapolation constant: one more than every constant clocks are compared to."""
    best = Fraction(0)
    atoms = [a for e in pta.edges for a in e.guard]
    atoms += [a for loc in pta.locations for a in pta.invariant(loc)]
    for a in atoms:
        best = max(best, atom_maximum(a.bound, pta.domain))
    for _, _, hi in pta.domain.bounds:
        best = max(best, Fraction(hi))
    return ceil(best) + 1


# --- concrete timed automata ---------------------------------------------------


@dataclass(frozen=True)
class ConcreteAtom:
    clock: str
    relation: str
    value: Fraction

    def __str__(self):
        return f"{self.clock} {self.relation} {self.value}"


@dataclass(frozen=True)
class ConcreteEdge:
    source: str
    target: str
    action: str
    guard: tuple[ConcreteAtom, ...]
    resets: tuple[str, ...]


@dataclass(frozen=True)
class ConcreteTA:
    """A timed automaton with rational (or, after rescaling, integer) constants.

    ``scale`` is the factor all constants were multiplied by.
    """

    clocks: tuple[str, ...]
    locations: tuple[str, ...]
    initial: str
    invariants: Mapping[str, tuple[ConcreteAtom, ...]]
    edges: tuple[ConcreteEdge, ...]
    scale: int = 1

    def constants(self) -> list[Fraction]:
        vals = [a.value for e in self.edges for a in e.guard]
        vals += [a.value for atoms in self.invariants.values() for a in atoms]
        return vals

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.constants())

    def rescale(self) -> "ConcreteTA":
        """Multiply every constant by the lcm of their denominators."""
        k = lcm(1, *(c.denominator for c in self.constants()))
        if k == 1:
            return self

        def scaled(atoms):
            return tuple(ConcreteAtom(a.clock, a.relation, a.value * k) for a in atoms)

        return replace(
            self,
            invariants={l: scaled(a) for l, a in self.invariants.items()},
            edges=tuple(replace(e, guard=scaled(e.guard)) for e in self.edges),
            scale=self.scale * k,
        )


def instantiate(pta: PTA, valuation: Mapping[str, object]) -> ConcreteTA:
    """Replace every parameter by its value; the valuation must lie in the domain."""
    v = {}
    for p in pta.params:
        if p not in valuation:
            raise ModelError(f"valuation misses parameter {p!r}")
        v[p] = Fraction(valuation[p])
    if any(x < 0 for x in v.values()) or not pta.domain.contains(v):
        shown = ", ".join(f"{p}={v[p]}" for p in pta.params)
        raise ModelError(f"valuation {shown} lies outside the parameter domain")

    def inst(atoms):
        return tuple(ConcreteAtom(a.clock, a.relation, a.bound.evaluate(v)) for a in atoms)

    return ConcreteTA(
        clocks=pta.clocks,
        locations=pta.locations,
        initial=pta.initial,
        invariants={loc: inst(pta.invariant(loc)) for loc in pta.locations},
        edges=tuple(
            ConcreteEdge(e.source, e.target, e.action, inst(e.guard), e.resets) for e in pta.edges
        ),
    )


def rescale(ta: ConcreteTA) -> ConcreteTA:
    return ta.rescale()
