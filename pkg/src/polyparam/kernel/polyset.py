"""Finite unions of polyhedra over a common variable space."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import SpaceMismatch
from .linear import LE, AtomicConstraint, LinearTerm, VarSpace
from .polyhedron import Polyhedron, _canonical, _from_closed_generators


def _reduce(disjuncts: Iterable[Polyhedron]) -> tuple[Polyhedron, ...]:
    parts = [d for d in disjuncts if not d.is_empty()]
    keep: list[Polyhedron] = []
    for i, d in enumerate(parts):
        covered = False
        for j, e in enumerate(parts):
            if i == j:
                continue
            if e.includes(d) and (j < i or not d.includes(e)):
                covered = True
                break
        if not covered:
            keep.append(d)
    return tuple(sorted(keep, key=lambda d: d.to_text()))


def nonnegative_orthant(space: VarSpace) -> Polyhedron:
    return Polyhedron(space, [AtomicConstraint(-LinearTerm.var(v), LE) for v in space.names])


def subtract(p: Polyhedron, q: Polyhedron) -> list[Polyhedron]:
    """``p \\ q`` as pairwise disjoint polyhedra."""
    if p.is_empty():
        return []
    if q.is_universe():
        return []
    meet = p.intersect(q)
    if meet.is_empty():
        return [p]
    if q.includes(p):
        return []
    out = []
    prefix = p
    for atom in q.constraints():
        for neg in atom.negated():
            piece = prefix.intersect([neg])
            if not piece.is_empty():
                out.append(piece)
        prefix = prefix.intersect([atom])
        if prefix.is_empty():
            break
    return out


class PolyhedralSet:
    """A union of :class:`Polyhedron` objects.

    Disjuncts are kept reduced: none is empty or contained in another, and
    they are ordered by their text form.
    """

    __slots__ = ("space", "disjuncts")

    def __init__(self, space: VarSpace, disjuncts: Iterable[Polyhedron] = ()):
        disjuncts = list(disjuncts)
        for d in disjuncts:
            if d.space != space:
                raise SpaceMismatch(f"{d.space} vs {space}")
        self.space = space
        self.disjuncts = _reduce(disjuncts)

    @classmethod
    def empty(cls, space: VarSpace) -> "PolyhedralSet":
        return cls(space)

    @classmethod
    def universe(cls, space: VarSpace) -> "PolyhedralSet":
        return cls(space, [Polyhedron.universe(space)])

    @classmethod
    def from_text(cls, space: VarSpace, text: str) -> "PolyhedralSet":
        text = text.strip()
        if text == "false":
            return cls(space)
        return cls(space, [Polyhedron(space, part.strip().strip("()")) for part in text.split("|")])

    @classmethod
    def of(cls, p: Polyhedron) -> "PolyhedralSet":
        return cls(p.space, [p])

    def _check(self, other: "PolyhedralSet"):
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def __iter__(self):
        return iter(self.disjuncts)

    def __len__(self):
        return len(self.disjuncts)

    def is_empty(self) -> bool:
        return not self.disjuncts

    def contains(self, valuation: Mapping[str, object] | Sequence) -> bool:
        return any(d.contains(valuation) for d in self.disjuncts)

    def union(self, other: "PolyhedralSet | Polyhedron") -> "PolyhedralSet":
        if isinstance(other, Polyhedron):
            other = PolyhedralSet.of(other)
        self._check(other)
        return PolyhedralSet(self.space, self.disjuncts + other.disjuncts)

    __or__ = union

    def intersect(self, other: "PolyhedralSet | Polyhedron") -> "PolyhedralSet":
        if isinstance(other, Polyhedron):
            other = PolyhedralSet.of(other)
        self._check(other)
        return PolyhedralSet(
            self.space, [a.intersect(b) for a in self.disjuncts for b in other.disjuncts]
        )

    __and__ = intersect

    def difference(self, other: "PolyhedralSet | Polyhedron") -> "PolyhedralSet":
        if isinstance(other, Polyhedron):
            other = PolyhedralSet.of(other)
        self._check(other)
        pieces = list(self.disjuncts)
        for q in other.disjuncts:
            nxt = []
            for p in pieces:
                nxt.extend(subtract(p, q))
            pieces = nxt
            if not pieces:
                break
        return PolyhedralSet(self.space, pieces)

    __sub__ = difference

    def complement(self, domain: "Polyhedron | PolyhedralSet | None" = None) -> "PolyhedralSet":
        """Complement inside ``domain`` (default: all variables nonnegative)."""
        if domain is None:
            domain = nonnegative_orthant(self.space)
        if isinstance(domain, Polyhedron):
            domain = PolyhedralSet.of(domain)
        return domain.difference(self)

    def includes(self, other: "PolyhedralSet | Polyhedron") -> bool:
        if isinstance(other, Polyhedron):
            other = PolyhedralSet.of(other)
        self._check(other)
        for d in other.disjuncts:
            if any(e.includes(d) for e in self.disjuncts):
                continue
            if d.is_closed() and not all(self._has_point(g) for g in d._points):
                return False
            if not PolyhedralSet.of(d).difference(self).is_empty():
                return False
        return True

    def _has_point(self, hom) -> bool:
        point = [Fraction(x, hom[0]) for x in hom[1:]]
        return any(d.contains(point) for d in self.disjuncts)

    def set_equals(self, other: "PolyhedralSet") -> bool:
        self._check(other)
        if self.disjuncts == other.disjuncts:
            return True
        if len(self.disjuncts) == 1 and len(other.disjuncts) == 1:
            return self.disjuncts[0].equals(other.disjuncts[0])
        return self.includes(other) and other.includes(self)

    def __eq__(self, other):
        if not isinstance(other, PolyhedralSet):
            return NotImplemented
        return self.space == other.space and self.set_equals(other)

    __hash__ = None

    def map(self, fn) -> "PolyhedralSet":
        parts = [fn(d) for d in self.disjuncts]
        space = parts[0].space if parts else self.space
        return PolyhedralSet(space, parts)

    def project_to_params(self) -> "PolyhedralSet":
        space = self.space.param_space()
        return PolyhedralSet(space, [d.project_to_params() for d in self.disjuncts])

    def integer_hull(self, grid: Mapping[str, int] | None = None) -> "PolyhedralSet":
        """Union of the integer hulls of the disjuncts."""
        return self.map(lambda d: d.integer_hull(grid))

    def coalesce(self) -> "PolyhedralSet":
        """Merge disjuncts whose union is convex."""
        parts = list(self.disjuncts)
        changed = True
        while changed and len(parts) > 1:
            changed = False
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    merged = _try_merge(parts[i], parts[j])
                    if merged is not None:
                        parts = [p for k, p in enumerate(parts) if k not in (i, j)] + [merged]
                        changed = True
                        break
                if changed:
                    break
        return PolyhedralSet(self.space, parts)

    def to_text(self) -> str:
        if not self.disjuncts:
            return "false"
        if len(self.disjuncts) == 1:
            return self.disjuncts[0].to_text()
        return " | ".join(f"({d.to_text()})" for d in self.disjuncts)

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in d.constraints()] for d in self.disjuncts]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"PolyhedralSet({self.space}, {self.to_text()!r})"


def _try_merge(a: Polyhedron, b: Polyhedron) -> Polyhedron | None:
    if a.includes(b):
        return a
    if b.includes(a):
        return b
    gens = sorted(set(a._points + a._rays + b._points + b._rays))
    lines = list(a._lines + b._lines)
    hull = _from_closed_generators(a.space, lines, gens)
    strict = []
    for p, q in ((a, b), (b, a)):
        for row, s in p.ineqs:
            if not s:
                continue
            if Polyhedron.from_rows(a.space, [], [(row, True)]).includes(q):
                strict.append((row, True))
    cand = _canonical(a.space, list(hull.eqs), list(hull.ineqs) + strict)
    rest = PolyhedralSet.of(cand).difference(PolyhedralSet(a.space, [a, b]))
    return cand if rest.is_empty() else None
