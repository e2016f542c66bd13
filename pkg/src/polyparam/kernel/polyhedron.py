"""Exact convex polyhedra over the rationals, strict inequalities included.

Rows are integer tuples ``(b, a_1, ..., a_n)`` read as ``b + a.x REL 0``
with ``REL`` one of ``<=``, ``<``, ``=``.  Every :class:`Polyhedron` is kept
in a minimized canonical constraint form together with the generators that
were computed to minimize it.

Strict inequalities are handled with the usual extra-dimension encoding: the
set ``{x : exists eps > 0, (x, eps) in P_eps}`` where each strict row
``b + a.x < 0`` becomes ``b + a.x + eps <= 0`` and ``0 <= eps <= 1``.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import ceil, floor, lcm, prod
from typing import Iterable, Mapping, Sequence, Union

from ..errors import BoxTooLarge, ModelError, SpaceMismatch
from . import dd
from .dd import Vector, primitive
from .linear import EQ, LE, LT, AtomicConstraint, LinearTerm, VarSpace, integer_row, parse_atoms

Row = Vector
ConstraintLike = Union[AtomicConstraint, str]

#: cap on lattice points examined by :meth:`Polyhedron.integer_hull`
MAX_HULL_BOX = 2_000_000


def _is_trivial(row: Row) -> bool:
    return not any(row[1:])


def _trivial_holds(row: Row, kind: str) -> bool:
    b = row[0]
    return b == 0 if kind == EQ else (b <= 0 if kind == LE else b < 0)


def _neg(row: Sequence[int]) -> Vector:
    return tuple(-x for x in row)


def _reduce_row(row: Row, eqs: Sequence[tuple[int, Row]]) -> Row:
    """Eliminate the pivot columns of ``eqs`` from ``row`` (positive scaling)."""
    for col, e in eqs:
        c = row[col]
        if c:
            p = e[col]  # > 0
            row = tuple(p * r - c * x for r, x in zip(row, e))
    return primitive(row)


def _echelon(rows: Iterable[Row]) -> list[tuple[int, Row]]:
    """Reduced row echelon form of equality rows, pivots on variable columns.

    Returns ``(pivot_column, row)`` pairs; pivot coefficient positive, row
    primitive, pivot column zero in every other row.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    n = len(mat[0]) if mat else 0
    out: list[list[Fraction]] = []
    pivots: list[int] = []
    for col in range(1, n):
        pivot = next((r for r in mat if r[col] != 0), None)
        if pivot is None:
            continue
        mat.remove(pivot)
        pivot = [x / pivot[col] for x in pivot]
        mat = [[x - r[col] * y for x, y in zip(r, pivot)] for r in mat]
        out = [[x - r[col] * y for x, y in zip(r, pivot)] for r in out]
        out.append(pivot)
        pivots.append(col)
    result = []
    for col, r in zip(pivots, out):
        den = lcm(*(x.denominator for x in r))
        result.append((col, primitive(int(x * den) for x in r)))
    return result


def _sort_key(row: Row, kind: str):
    first = next(i for i, c in enumerate(row[1:]) if c)
    return (first, row[1:], {EQ: 0, LE: 1, LT: 2}[kind], row[0])


def fm_eliminate(
    eqs: list[Row], ineqs: list[tuple[Row, bool]], col: int
) -> tuple[list[Row], list[tuple[Row, bool]]]:
    """Existentially quantify column ``col``; the column is zero afterwards."""
    for k, e in enumerate(eqs):
        c = e[col]
        if c:
            if c < 0:
                e = _neg(e)
                c = -c
            rest = eqs[:k] + eqs[k + 1 :]
            new_eqs = [primitive(c * r - row[col] * x for r, x in zip(row, e)) if row[col] else row
                       for row in rest]
            new_ineqs = [
                (primitive(c * r - row[col] * x for r, x in zip(row, e)), s) if row[col] else (row, s)
                for row, s in ineqs
            ]
            return new_eqs, new_ineqs
    pos, neg, keep = [], [], []
    for row, s in ineqs:
        c = row[col]
        if c > 0:
            pos.append((row, s))
        elif c < 0:
            neg.append((row, s))
        else:
            keep.append((row, s))
    seen = set()
    for p, ps in pos:
        for q, qs in neg:
            cp, cq = p[col], -q[col]
            row = primitive(cq * a + cp * b for a, b in zip(p, q))
            strict = ps or qs
            if (row, strict) not in seen:
                seen.add((row, strict))
                keep.append((row, strict))
    return list(eqs), keep


class Polyhedron:
    """A convex, possibly not topologically closed, rational polyhedron.

    Nonnegativity of variables is never implicit: the empty conjunction is
    the whole space.
    """

    __slots__ = (
        "space", "eqs", "ineqs", "empty",
        "_points", "_rays", "_lines", "_inner", "_closure_key", "_text",
    )

    def __init__(self, space: VarSpace, constraints: Iterable[ConstraintLike] | str = ()):
        if isinstance(constraints, str):
            constraints = parse_atoms(constraints)
        eqs, ineqs = [], []
        for c in constraints:
            if isinstance(c, str):
                for a in parse_atoms(c):
                    _add_atom(a, space, eqs, ineqs)
            else:
                _add_atom(c, space, eqs, ineqs)
        other = _canonical(space, eqs, ineqs)
        for name in self.__slots__:
            setattr(self, name, getattr(other, name))

    # -- construction -------------------------------------------------------

    @classmethod
    def _raw(cls, space: VarSpace) -> "Polyhedron":
        p = cls.__new__(cls)
        p.space = space
        p.eqs = ()
        p.ineqs = ()
        p.empty = False
        p._points = p._rays = p._lines = p._inner = ()
        p._closure_key = None
        p._text = None
        return p

    @classmethod
    def universe(cls, space: VarSpace) -> "Polyhedron":
        return _canonical(space, [], [])

    @classmethod
    def empty_set(cls, space: VarSpace) -> "Polyhedron":
        p = cls._raw(space)
        p.empty = True
        return p

    @classmethod
    def from_rows(cls, space: VarSpace, eqs: Iterable[Row], ineqs: Iterable[tuple[Row, bool]]):
        return _canonical(space, list(eqs), list(ineqs))

    @classmethod
    def from_generators(
        cls,
        space: VarSpace,
        points: Iterable[Sequence[Fraction]],
        rays: Iterable[Sequence[int]] = (),
        lines: Iterable[Sequence[int]] = (),
    ) -> "Polyhedron":
        """Closed polyhedron ``conv(points) + cone(rays) + span(lines)``."""
        hom = []
        for p in points:
            p = [Fraction(x) for x in p]
            den = lcm(*(x.denominator for x in p)) if p else 1
            hom.append(primitive([den] + [int(x * den) for x in p]))
        if not hom:
            return cls.empty_set(space)
        rays = [primitive((0,) + tuple(r)) for r in rays]
        lines = [primitive((0,) + tuple(l)) for l in lines]
        return _from_closed_generators(space, lines, hom + rays)

    # -- inspection -----------------------------------------------------------

    def is_empty(self) -> bool:
        return self.empty

    def is_universe(self) -> bool:
        return not self.empty and not self.eqs and not self.ineqs

    def is_closed(self) -> bool:
        return not any(s for _, s in self.ineqs)

    @property
    def rows(self) -> tuple[list[Row], list[tuple[Row, bool]]]:
        return list(self.eqs), list(self.ineqs)

    def constraints(self) -> list[AtomicConstraint]:
        names = self.space.names
        out = []
        if self.empty:
            return [AtomicConstraint(LinearTerm.const(1), LE)]
        for row in self.eqs:
            out.append(AtomicConstraint(_row_term(row, names), EQ))
        for row, strict in self.ineqs:
            out.append(AtomicConstraint(_row_term(row, names), LT if strict else LE))
        return out

    def generators(self):
        """``(vertices, closure_points, rays, lines)`` of this polyhedron.

        ``vertices`` lie in the set, ``closure_points`` only in its closure.
        Vertices and closure points are tuples of Fractions.
        """
        if self.empty:
            return [], [], [], []
        verts, cps = [], []
        for g in _extreme_points(self):
            v = tuple(Fraction(x, g[0]) for x in g[1:])
            (verts if self.contains(v) else cps).append(v)
        rays = [r[1:] for r in self._rays]
        lines = [l[1:] for l in self._lines]
        return verts, cps, rays, lines

    def contains(self, valuation: Mapping[str, object] | Sequence) -> bool:
        point = self._coords(valuation)
        if self.empty:
            return False
        for row in self.eqs:
            if _eval(row, point) != 0:
                return False
        for row, strict in self.ineqs:
            v = _eval(row, point)
            if v > 0 or (strict and v == 0):
                return False
        return True

    def _coords(self, valuation) -> tuple[Fraction, ...]:
        if isinstance(valuation, Mapping):
            try:
                return tuple(Fraction(valuation[v]) for v in self.space.names)
            except KeyError as exc:
                raise ModelError(f"valuation misses variable {exc.args[0]!r}") from None
        vals = tuple(Fraction(x) for x in valuation)
        if len(vals) != self.space.dim:
            raise ModelError(f"expected {self.space.dim} coordinates, got {len(vals)}")
        return vals

    def _check_space(self, other: "Polyhedron"):
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def includes(self, other: "Polyhedron") -> bool:
        """True iff ``other`` is a subset of ``self``."""
        self._check_space(other)
        if other.empty:
            return True
        if self.empty:
            return False
        gens = other._points + other._rays
        for row in self.eqs:
            for g in gens:
                if dd.dot(row, g):
                    return False
            for l in other._lines:
                if dd.dot(row, l):
                    return False
        for row, strict in self.ineqs:
            for g in gens:
                if dd.dot(row, g) > 0:
                    return False
            for l in other._lines:
                if dd.dot(row, l):
                    return False
            if strict:
                for g in other._inner:
                    if dd.dot(row, g) == 0:
                        return False
        return True

    def equals(self, other: "Polyhedron") -> bool:
        self._check_space(other)
        if self.empty or other.empty:
            return self.empty and other.empty
        if self.eqs == other.eqs and self.ineqs == other.ineqs:
            return True
        if self.closure_key() != other.closure_key():
            return False
        return self.includes(other) and other.includes(self)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self.space == other.space and self.equals(other)

    def __hash__(self):
        return hash((self.space, self.closure_key()))

    def closure_key(self):
        """Canonical form of the closure; equal sets have equal keys."""
        if self._closure_key is None:
            if self.empty:
                self._closure_key = ("empty",)
            elif self.is_closed():
                self._closure_key = (self.eqs, tuple(r for r, _ in self.ineqs))
            else:
                self._closure_key = self.closure().closure_key()
        return self._closure_key

    # -- set operations -------------------------------------------------------

    def intersect(self, other: "Polyhedron | Iterable[ConstraintLike] | str") -> "Polyhedron":
        if not isinstance(other, Polyhedron):
            other = Polyhedron(self.space, other)
        self._check_space(other)
        if self.empty or other.empty:
            return Polyhedron.empty_set(self.space)
        if other.is_universe():
            return self
        return _canonical(self.space, list(self.eqs) + list(other.eqs),
                          list(self.ineqs) + list(other.ineqs))

    __and__ = intersect

    def closure(self) -> "Polyhedron":
        if self.empty or self.is_closed():
            return self
        return _canonical(self.space, list(self.eqs), [(r, False) for r, _ in self.ineqs])

    def eliminate(self, names: Iterable[str]) -> "Polyhedron":
        """Existentially quantify ``names``; they become unconstrained."""
        if self.empty:
            return self
        p = self
        for name in names:
            col = self.space.index(name) + 1
            eqs, ineqs = fm_eliminate(list(p.eqs), list(p.ineqs), col)
            p = _canonical(self.space, eqs, ineqs)
            if p.empty:
                break
        return p

    def cylindrify(self, name: str) -> "Polyhedron":
        """Forget ``name``, then constrain it only by ``name >= 0``."""
        p = self.eliminate([name])
        if p.empty:
            return p
        return p.intersect([AtomicConstraint(-LinearTerm.var(name), LE)])

    def reset(self, clocks: Iterable[str]) -> "Polyhedron":
        clocks = list(clocks)
        for c in clocks:
            if not self.space.is_clock(c):
                raise ModelError(f"unknown clock {c!r}")
        if not clocks or self.empty:
            return self
        p = self.eliminate(clocks)
        return p.intersect([AtomicConstraint(LinearTerm.var(c), EQ) for c in clocks])

    def _shift(self, sign: int) -> "Polyhedron":
        """All points ``x + sign * d * 1_clocks`` with ``d >= 0``."""
        if self.empty or not self.space.clocks:
            return self
        nclk = len(self.space.clocks)
        eqs = []
        ineqs = []
        for row in self.eqs:
            eqs.append(row + (-sign * sum(row[1 : 1 + nclk]),))
        for row, s in self.ineqs:
            ineqs.append((row + (-sign * sum(row[1 : 1 + nclk]),), s))
        d = self.space.dim + 1
        ineqs.append(((0,) * d + (-1,), False))
        eqs, ineqs = fm_eliminate(eqs, ineqs, d)
        eqs = [r[:-1] for r in eqs]
        ineqs = [(r[:-1], s) for r, s in ineqs]
        return _canonical(self.space, eqs, ineqs)

    def time_elapse(self) -> "Polyhedron":
        """Future: delay every clock by the same nonnegative amount."""
        return self._shift(+1)

    def time_past(self) -> "Polyhedron":
        """Past, restricted to nonnegative clock values."""
        p = self._shift(-1)
        if p.empty:
            return p
        return p.intersect([AtomicConstraint(-LinearTerm.var(c), LE) for c in self.space.clocks])

    def project(self, keep: Sequence[str], space: VarSpace | None = None) -> "Polyhedron":
        """Projection on the variables ``keep``, as a polyhedron over ``space``."""
        if space is None:
            clocks = tuple(v for v in self.space.clocks if v in keep)
            params = tuple(v for v in self.space.params if v in keep)
            space = VarSpace(clocks, params)
        if self.empty:
            return Polyhedron.empty_set(space)
        drop = [v for v in self.space.names if v not in space.names]
        p = self.eliminate(drop)
        cols = [0] + [self.space.index(v) + 1 for v in space.names]
        eqs = [tuple(r[c] for c in cols) for r in p.eqs]
        ineqs = [(tuple(r[c] for c in cols), s) for r, s in p.ineqs]
        return _canonical(space, eqs, ineqs)

    def project_to_params(self) -> "Polyhedron":
        return self.project(self.space.params, self.space.param_space())

    def substitute(self, values: Mapping[str, object]) -> "Polyhedron":
        """Fix the variables in ``values`` and drop them from the space."""
        names = [v for v in self.space.names if v not in values]
        space = VarSpace(
            tuple(v for v in self.space.clocks if v in names),
            tuple(v for v in self.space.params if v in names),
        )
        if self.empty:
            return Polyhedron.empty_set(space)
        atoms = [a.substitute({k: Fraction(v) for k, v in values.items()}) for a in self.constraints()]
        return Polyhedron(space, atoms)

    def embed(self, space: VarSpace) -> "Polyhedron":
        """Same constraints viewed in a larger space (new variables free)."""
        if space == self.space:
            return self
        if self.empty:
            return Polyhedron.empty_set(space)
        return Polyhedron(space, self.constraints())

    def integer_hull(self, grid: Mapping[str, int] | None = None) -> "Polyhedron":
        """Convex hull of the integer points, plus the recession cone.

        ``grid`` maps variable names to denominators: the hull is then taken
        over points whose coordinate for ``v`` lies in ``(1/grid[v]) Z``.
        """
        if self.empty:
            return self
        scale = [int((grid or {}).get(v, 1)) for v in self.space.names]
        if any(d != 1 for d in scale):
            if any(d < 1 for d in scale):
                raise ModelError("grid denominators must be positive")
            big = lcm(*scale)
            # y = d*x, so rows on x become rows on y and back
            down = lambda r: primitive([r[0] * big] + [a * big // d for a, d in zip(r[1:], scale)])
            up = lambda r: primitive([r[0]] + [a * d for a, d in zip(r[1:], scale)])
            fine = Polyhedron.from_rows(
                self.space, [down(r) for r in self.eqs], [(down(r), s) for r, s in self.ineqs]
            ).integer_hull()
            if fine.empty:
                return fine
            return Polyhedron.from_rows(
                self.space, [up(r) for r in fine.eqs], [(up(r), s) for r, s in fine.ineqs]
            )
        pts = _lattice_points(self)
        if not pts:
            return Polyhedron.empty_set(self.space)
        pts = _drop_midpoints(pts)
        hom = [(1,) + z for z in pts]
        return _from_closed_generators(self.space, list(self._lines), hom + list(self._rays))

    def integer_points(self) -> list[tuple[int, ...]]:
        """All integer points; the polyhedron must be bounded."""
        if self.empty:
            return []
        if self._rays or self._lines:
            raise BoxTooLarge("integer_points needs a bounded polyhedron")
        return sorted(_lattice_points(self))

    # -- printing ---------------------------------------------------------------

    def to_text(self) -> str:
        if self._text is None:
            if self.empty:
                self._text = "false"
            elif self.is_universe():
                self._text = "true"
            else:
                names = self.space.names
                self._text = " & ".join(
                    f"{a.term.to_text(names)} {a.relation} 0" for a in self.constraints()
                )
        return self._text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Polyhedron({self.space}, {self.to_text()!r})"


def _row_term(row: Row, names) -> LinearTerm:
    return LinearTerm({v: c for v, c in zip(names, row[1:])}, row[0])


def _eval(row: Row, point: Sequence[Fraction]) -> Fraction:
    return row[0] + sum(a * x for a, x in zip(row[1:], point))


def _add_atom(a: AtomicConstraint, space: VarSpace, eqs: list, ineqs: list):
    a = a.normalized()
    row = integer_row(a.term, space.names)
    if a.relation == EQ:
        eqs.append(row)
    else:
        ineqs.append((row, a.relation == LT))


def _canonical(space: VarSpace, eqs: list[Row], ineqs: list[tuple[Row, bool]]) -> Polyhedron:
    n = space.dim
    e_rows, i_rows = set(), {}
    for row in eqs:
        row = primitive(row)
        if _is_trivial(row):
            if not _trivial_holds(row, EQ):
                return Polyhedron.empty_set(space)
            continue
        e_rows.add(row)
    for row, strict in ineqs:
        row = primitive(row)
        if _is_trivial(row):
            if not _trivial_holds(row, LT if strict else LE):
                return Polyhedron.empty_set(space)
            continue
        i_rows[row] = i_rows.get(row, False) or strict
    if not e_rows and not i_rows:
        p = Polyhedron._raw(space)
        p._points = ((1,) + (0,) * n,)
        p._inner = p._points
        p._lines = tuple(tuple(1 if i == j else 0 for j in range(n + 1)) for i in range(1, n + 1))
        return p

    e_rows = sorted(e_rows)
    strict_rows = [r for r, s in i_rows.items() if s]
    i_sorted = sorted(i_rows.items())
    if not strict_rows:
        cone = dd.generators(
            n + 1, e_rows, [_neg(r) for r, _ in i_sorted] + [(1,) + (0,) * n]
        )
        points = [g for g in cone.rays if g[0] > 0]
        if not points:
            return Polyhedron.empty_set(space)
        return _from_closed_generators(space, cone.lines, cone.rays, cone_points=points)

    eps_cone = _eps_cone(n, e_rows, i_sorted)
    inner = [g[:-1] for g in eps_cone.rays if g[-1] > 0]
    if not inner:
        return Polyhedron.empty_set(space)
    lines = [l[:-1] for l in eps_cone.lines]
    closure_gens = sorted({primitive(g[:-1]) for g in eps_cone.rays})
    base = _from_closed_generators(space, lines, closure_gens)

    # strict facets: those whose hyperplane misses the set
    inner = [primitive(g) for g in inner]
    ineqs_out = []
    for row, _ in base.ineqs:
        touches = any(dd.dot(row, g) == 0 for g in inner)
        ineqs_out.append((row, not touches))

    # a strict input row may still be needed even if it is not a facet
    pivots = _echelon(base.eqs) if base.eqs else []
    have = {r for r, s in ineqs_out if s}
    extra = []
    for row in sorted(strict_rows):
        red = _reduce_row(row, pivots)
        if _is_trivial(red) or red in have:
            continue
        test = _eps_cone(n, list(base.eqs), ineqs_out + extra)
        test.add(red + (0,))  # red(x) >= 0
        if any(g[-1] > 0 for g in test.rays):
            extra.append((red, True))
            have.add(red)
    ineqs_out += extra

    p = Polyhedron._raw(space)
    p.eqs = base.eqs
    p.ineqs = tuple(sorted(ineqs_out, key=lambda rs: _sort_key(rs[0], LT if rs[1] else LE)))
    p._points = base._points
    p._rays = base._rays
    p._lines = base._lines
    p._inner = tuple(inner)
    return p


def _eps_cone(n, e_rows, i_rows) -> dd.Cone:
    ineq_vecs = []
    for row, strict in i_rows:
        ineq_vecs.append(_neg(row) + ((-1,) if strict else (0,)))
    ineq_vecs.append((0,) * (n + 1) + (1,))
    ineq_vecs.append((1,) + (0,) * n + (-1,))
    return dd.generators(n + 2, [tuple(r) + (0,) for r in e_rows], ineq_vecs)


def _from_closed_generators(space, lines, gens, cone_points=None) -> Polyhedron:
    """Canonical closed polyhedron from homogeneous generators."""
    n = space.dim
    eq_vecs, facet_vecs = dd.constraints(n + 1, lines, gens)
    eqs = []
    for e in eq_vecs:
        if _is_trivial(e):
            if e[0] != 0:
                return Polyhedron.empty_set(space)
            continue
        eqs.append(e)
    pivots = _echelon(eqs) if eqs else []
    facets = set()
    for f in facet_vecs:
        row = _reduce_row(_neg(f), pivots)
        if _is_trivial(row):
            continue
        facets.add(row)
    p = Polyhedron._raw(space)
    p.eqs = tuple(r for _, r in sorted(pivots))
    p.ineqs = tuple(sorted(((r, False) for r in facets), key=lambda rs: _sort_key(rs[0], LE)))
    if cone_points is None:
        cone_points = [g for g in gens if g[0] > 0]
    p._points = tuple(cone_points)
    p._rays = tuple(g for g in gens if g[0] == 0)
    p._lines = tuple(lines)
    p._inner = p._points
    if not p._points:
        return Polyhedron.empty_set(space)
    return p


def _extreme_points(p: Polyhedron) -> list[Vector]:
    """Vertices of the closure (points saturating a rank-n set of rows)."""
    rows = list(p.eqs) + [r for r, _ in p.ineqs]
    n = p.space.dim - len(p._lines)
    out = []
    for g in sorted(set(p._points)):
        tight = [r[1:] for r in rows if dd.dot(r, g) == 0]
        if _rank(tight) >= n:
            out.append(g)
    return out


def _rank(rows) -> int:
    mat = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _lattice_points(p: Polyhedron) -> list[tuple[int, ...]]:
    """Integer points of ``p`` inside the box spanned by its points plus one
    copy of each recession generator (enough to generate all of them)."""
    n = p.space.dim
    if n == 0:
        return [()]
    pts = [[Fraction(x, g[0]) for x in g[1:]] for g in p._points]
    rec = [r[1:] for r in p._rays] + [l[1:] for l in p._lines]
    lo, hi = [], []
    for i in range(n):
        lo.append(ceil(min(q[i] for q in pts) + sum(min(0, r[i]) for r in rec)))
        hi.append(floor(max(q[i] for q in pts) + sum(max(0, r[i]) for r in rec)))
        if lo[-1] > hi[-1]:
            return []
    size = prod(h - l + 1 for l, h in zip(lo, hi))
    if size > MAX_HULL_BOX:
        raise BoxTooLarge(f"integer hull box has {size} points")
    # sweep the widest coordinate analytically
    col = max(range(n), key=lambda i: hi[i] - lo[i])
    others = [i for i in range(n) if i != col]
    eqs = list(p.eqs)
    ineqs = list(p.ineqs)
    out = []
    for prefix in itertools.product(*(range(lo[i], hi[i] + 1) for i in others)):
        a_lo, a_hi = Fraction(lo[col]), Fraction(hi[col])
        lo_strict = hi_strict = False
        ok = True
        for row, strict, kind in [(r, False, EQ) for r in eqs] + [(r, s, LE) for r, s in ineqs]:
            base = row[0] + sum(row[1 + i] * v for i, v in zip(others, prefix))
            c = row[1 + col]
            if c == 0:
                if kind == EQ:
                    ok = base == 0
                else:
                    ok = base < 0 if strict else base <= 0
                if not ok:
                    break
                continue
            bound = Fraction(-base, c)
            if kind == EQ:
                if bound < a_lo or bound > a_hi:
                    ok = False
                    break
                a_lo = a_hi = bound
                lo_strict = hi_strict = False
                continue
            if c > 0:  # value <= bound
                if bound < a_hi or (bound == a_hi and strict):
                    a_hi, hi_strict = bound, strict
            else:
                if bound > a_lo or (bound == a_lo and strict):
                    a_lo, lo_strict = bound, strict
        if not ok:
            continue
        first = floor(a_lo) + 1 if lo_strict and a_lo.denominator == 1 else ceil(a_lo)
        last = ceil(a_hi) - 1 if hi_strict and a_hi.denominator == 1 else floor(a_hi)
        for v in range(first, last + 1):
            z = list(prefix)
            z.insert(col, v)
            out.append(tuple(z))
    return out


def _drop_midpoints(pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Remove points that are midpoints of two other lattice points of the set."""
    if len(pts) <= 2:
        return pts
    n = len(pts[0])
    present = set(pts)
    dirs = []
    for u in itertools.product((-1, 0, 1), repeat=n):
        if any(u) and next(x for x in u if x) > 0:
            dirs.append(u)
    dirs.sort(key=lambda u: sum(map(abs, u)))
    keep = []
    for z in pts:
        interior = False
        for u in dirs:
            if (tuple(a + b for a, b in zip(z, u)) in present
                    and tuple(a - b for a, b in zip(z, u)) in present):
                interior = True
                break
        if not interior:
            keep.append(z)
    return keep
