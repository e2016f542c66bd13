from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyparam.errors import ModelError, SpaceMismatch
from polyparam.kernel.linear import VarSpace, parse_atoms
from polyparam.kernel.polyhedron import Polyhedron
from polyparam.kernel.polyset import PolyhedralSet, nonnegative_orthant

from oracles import feasible, holds, integer_points, rational_grid
from strategies import PQ, XP, XYP, boxed, poly, systems

X = VarSpace(("x",), ())
XY = VarSpace(("x", "y"), ())
P = VarSpace((), ("p",))
P1P2 = VarSpace((), ("p1", "p2"))


def P_(space, text):
    return Polyhedron(space, text)


def S_(space, text):
    return PolyhedralSet.from_text(space, text)


# -- construction and queries ---------------------------------------------------


class TestConstruction:
    def test_empty_conjunction_is_universe(self):
        u = P_(XP, "")
        assert u.is_universe()
        assert u.contains({"x": -5, "p": -1})
        assert u.to_text() == "true"

    def test_contradictory_bounds(self):
        assert P_(X, "x <= -1 & x >= 0").is_empty()
        assert P_(X, "x < 0 & x > 0").is_empty()
        assert P_(X, "x < 0 & x > 0").to_text() == "false"

    def test_rational_point_but_no_integer_point(self):
        c = P_(XY, "2*x + 2*y = 1 & x >= 0 & y >= 0")
        assert not c.is_empty()
        assert c.contains({"x": Fraction(1, 4), "y": Fraction(1, 4)})

    def test_generators_of_unbounded_quadrant(self):
        c = P_(XP, "1 <= x & 1 <= 2*p")
        verts, cps, rays, lines = c.generators()
        assert verts == [(Fraction(1), Fraction(1, 2))]
        assert cps == [] and lines == []
        assert sorted(rays) == [(0, 1), (1, 0)]

    def test_strict_vertex_becomes_closure_point(self):
        verts, cps, _, _ = P_(X, "0 < x & x <= 1").generators()
        assert verts == [(Fraction(1),)]
        assert cps == [(Fraction(0),)]

    def test_unknown_variable(self):
        with pytest.raises(ModelError):
            P_(XP, "z <= 1")

    def test_contains_boundaries(self):
        assert P_(P, "1 <= 2*p").contains({"p": Fraction(1, 2)})
        assert not P_(P, "1 < 2*p").contains({"p": Fraction(1, 2)})
        assert P_(XP, "1 <= x & 1 <= 2*p").contains({"x": 1, "p": 1})

    def test_contains_needs_every_variable(self):
        with pytest.raises(ModelError):
            P_(XP, "x <= 1").contains({"x": 0})

    def test_canonical_text(self):
        assert P_(XP, "x <= 2*p & 2*p >= 1").to_text() == "x - 2*p <= 0 & -2*p + 1 <= 0"
        # strictness is kept in print
        assert P_(P, "0 <= p & p < 1/2").to_text() == "-p <= 0 & 2*p - 1 < 0"

    def test_redundant_rows_are_dropped(self):
        assert P_(X, "x <= 1 & x <= 2 & x < 3").to_text() == "x - 1 <= 0"

    def test_implicit_equality_is_detected(self):
        assert P_(XP, "x <= p & x >= p").to_text() == "x - p = 0"


class TestInclusion:
    def test_reflexive_and_simple(self):
        a = P_(P, "p >= 1")
        assert a.includes(a)
        assert a.includes(P_(P, "p >= 2"))
        assert not P_(P, "p >= 2").includes(a)

    def test_nested_constraints_share_integer_points(self):
        box = "0 <= p1 & p1 <= 5 & 0 <= p2 & p2 <= 5"
        a = P_(P1P2, f"6*p2 >= 5*p1 & {box}")
        b = P_(P1P2, f"7*p2 >= 6*p1 & {box}")
        # 6/7 > 5/6, so the second set is strictly inside the first
        assert a.includes(b) and not b.includes(a)
        assert a.integer_hull() == b.integer_hull()

    def test_strictness_matters(self):
        assert P_(P, "p <= 1").includes(P_(P, "p < 1"))
        assert not P_(P, "p < 1").includes(P_(P, "p <= 1"))

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            P_(P, "p <= 1").includes(P_(X, "x <= 1"))


# -- operators ----------------------------------------------------------------------


class TestOperators:
    def test_intersect(self):
        c = P_(XP, "1 <= x & x <= 2*p")
        assert c.intersect(Polyhedron.universe(XP)) == c
        assert P_(P, "p >= 1").intersect(P_(P, "p <= 0")).is_empty()
        assert P_(XP, "x >= 0").intersect(c) == c

    def test_time_elapse(self):
        origin = P_(XYP, "x = 0 & y = 0 & p = 1")
        assert origin.time_elapse() == P_(XYP, "x = y & x >= 0 & p = 1")
        assert Polyhedron.empty_set(XP).time_elapse().is_empty()
        c = P_(XP, "x >= 0 & 1 <= x & x <= 2*p").time_elapse()
        assert c == P_(XP, "x >= 1 & 2*p >= 1")

    def test_time_past(self):
        assert P_(X, "x = 2").time_past() == P_(X, "0 <= x & x <= 2")
        nonneg = P_(XY, "x >= 0 & y >= 0")
        assert nonneg.time_past() == nonneg
        assert P_(XP, "1 <= x & x <= 2*p").time_past() == P_(XP, "0 <= x & x <= 2*p & 2*p >= 1")

    def test_reset(self):
        c = P_(XYP, "x = 3 & y = x + 1")
        assert c.reset([]) == c
        assert c.reset(["x"]) == P_(XYP, "x = 0 & y = 4")
        loop = P_(XYP, "0 <= y - x & y - x <= p & 0 <= x & x <= p")
        assert loop.reset(["x"]) == P_(XYP, "x = 0 & 0 <= y & y <= 2*p")

    def test_reset_rejects_parameters(self):
        with pytest.raises(ModelError):
            P_(XP, "x <= p").reset(["p"])

    def test_cylindrify(self):
        assert P_(X, "x = 5").cylindrify("x") == P_(X, "x >= 0")
        assert P_(XP, "x <= p & p <= 1").cylindrify("x") == P_(XP, "x >= 0 & p <= 1")

    def test_project_to_params(self):
        assert P_(XP, "1 <= x & 1 <= 2*p").project_to_params() == P_(P, "2*p >= 1")
        assert P_(XP, "1 <= x & 1 <= p").project_to_params() == P_(P, "p >= 1")
        assert Polyhedron.empty_set(XP).project_to_params().is_empty()

    def test_integer_hull_examples(self):
        assert P_(XP, "1 <= x & 1 <= 2*p").integer_hull() == P_(XP, "1 <= x & 1 <= p")
        assert P_(XP, "x >= 0 & 1/2 <= p & p <= 2").integer_hull() == P_(XP, "x >= 0 & 1 <= p & p <= 2")
        assert P_(XY, "2*x + 2*y = 1 & 0 <= x & x <= 1").integer_hull().is_empty()

    def test_integer_hull_on_a_grid(self):
        c = P_(XP, "0 < x - 1 & x < 2 & p = 1")
        assert c.integer_hull().is_empty()
        assert c.integer_hull({"x": 2}) == P_(XP, "x = 3/2 & p = 1")


class TestSets:
    def test_complement_in_orthant(self):
        assert S_(P, "p >= 1").complement().set_equals(S_(P, "0 <= p & p < 1"))
        assert PolyhedralSet.empty(P).complement().set_equals(S_(P, "p >= 0"))

    def test_complement_of_a_segment_has_four_pieces(self):
        seg = S_(PQ, "q = p + 1 & 1/2 <= p & p <= 1")
        comp = seg.complement()
        assert len(comp) == 4
        for pt in rational_grid(2, 0, 3, 4):
            v = dict(zip(PQ.names, pt))
            assert comp.contains(v) != seg.contains(v)

    def test_trivial_identities(self):
        a = S_(P, "1 <= p & p <= 3 | p >= 5")
        assert a.union(PolyhedralSet.empty(P)).set_equals(a)
        assert a.intersect(a).set_equals(a)
        assert a.difference(a).is_empty()

    def test_halves_make_the_orthant(self):
        a = S_(P, "0 <= p & p < 1/2").union(S_(P, "p >= 1/2"))
        assert a.set_equals(S_(P, "p >= 0"))
        assert len(a.coalesce()) == 1

    def test_integer_hulls_of_example8_sets(self):
        box = "0 <= p1 & p1 <= 5 & 0 <= p2 & p2 <= 5"
        a = S_(P1P2, f"6*p2 >= 5*p1 & {box}")
        b = S_(P1P2, f"7*p2 >= 6*p1 & {box}")
        assert not a.set_equals(b)
        assert a.integer_hull().set_equals(b.integer_hull())

    def test_disjuncts_are_reduced_and_sorted(self):
        s = S_(P, "p >= 2 | p >= 1 | p <= -1")
        assert len(s) == 2
        assert s.to_text() == S_(P, "p <= -1 | p >= 1").to_text()

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            S_(P, "p <= 1").union(S_(X, "x <= 1"))


# -- properties against independent oracles ----------------------------------------------

GRID = rational_grid(2, -3, 3, 2)


@settings(max_examples=200, deadline=None)
@given(systems(3, max_rows=5))
def test_emptiness_matches_fourier_motzkin(system):
    assert poly(XYP, system).is_empty() == (not feasible(system, 3))


@settings(max_examples=100, deadline=None)
@given(systems(2))
def test_membership_matches_the_system(system):
    c = poly(XP, system)
    for pt in GRID:
        assert c.contains(pt) == holds(system, pt)


@settings(max_examples=100, deadline=None)
@given(systems(2), systems(2))
def test_intersection_is_conjunction(a, b):
    c = poly(XP, a).intersect(poly(XP, b))
    assert c.is_empty() == (not feasible(a + b, 2))
    for pt in GRID:
        assert c.contains(pt) == holds(a + b, pt)


@settings(max_examples=100, deadline=None)
@given(systems(3, max_rows=5))
def test_projection_is_existential(system):
    c = poly(XYP, system)
    proj = c.project(["y", "p"])
    for y, p in GRID:
        # fix y and p, ask whether some x remains
        fixed = [((Fraction(0), Fraction(1), Fraction(0)), -y, "="),
                 ((Fraction(0), Fraction(0), Fraction(1)), -p, "=")]
        assert proj.contains({"y": y, "p": p}) == feasible(system + fixed, 3)


@settings(max_examples=100, deadline=None)
@given(systems(3, max_rows=4, strict=False))
def test_generator_round_trip(system):
    c = poly(XYP, system)
    if c.is_empty():
        return
    verts, cps, rays, lines = c.generators()
    assert not cps
    back = Polyhedron.from_generators(XYP, verts, rays, lines)
    assert back == c


@settings(max_examples=100, deadline=None)
@given(systems(2, max_rows=3))
def test_time_past_adjunction(system):
    """A point lies in the past of C iff some delay of it (clock only) reaches C."""
    c = poly(XP, system)
    past = c.time_past()
    delays = [Fraction(k, 2) for k in range(0, 25)]
    for x, p in rational_grid(2, 0, 3, 2):
        reached = any(c.contains((x + d, p)) for d in delays)
        if reached:
            assert past.contains((x, p))
        if past.contains((x, p)):
            witness = feasible(system + [((Fraction(-1), Fraction(0)), x, "<="),
                                         ((Fraction(0), Fraction(1)), -p, "=")], 2)
            assert witness


@settings(max_examples=200, deadline=None)
@given(systems(3, max_rows=4))
def test_integer_hull_sandwich(system):
    system = boxed(system, 3)
    c = poly(XYP, system)
    ih = c.integer_hull()
    assert c.includes(ih)
    assert ih.is_closed()
    pts = integer_points(system, 3, -3, 3)
    assert {z for z in itertools.product(range(-3, 4), repeat=3) if ih.contains(z)} == pts
    assert ih.integer_hull() == ih


@settings(max_examples=200, deadline=None)
@given(systems(2, max_rows=3))
def test_complement_partitions_the_domain(system):
    c = PolyhedralSet.of(poly(PQ, system))
    for domain in (None, Polyhedron(PQ, "0 <= p & p <= 2 & 0 <= q & q <= 2")):
        dom = PolyhedralSet.of(domain if domain is not None else nonnegative_orthant(PQ))
        comp = c.complement(domain)
        inside = c.intersect(dom)
        assert inside.union(comp).set_equals(dom)
        assert inside.intersect(comp).is_empty()


@settings(max_examples=100, deadline=None)
@given(st.lists(systems(2, max_rows=3), min_size=1, max_size=3),
       st.lists(systems(2, max_rows=3), min_size=1, max_size=3))
def test_set_algebra_pointwise(xs, ys):
    a = PolyhedralSet(PQ, [poly(PQ, s) for s in xs])
    b = PolyhedralSet(PQ, [poly(PQ, s) for s in ys])
    ops = {
        "union": (a.union(b), lambda u, v: u or v),
        "intersect": (a.intersect(b), lambda u, v: u and v),
        "difference": (a.difference(b), lambda u, v: u and not v),
    }
    for pt in GRID:
        u = any(holds(s, pt) for s in xs)
        v = any(holds(s, pt) for s in ys)
        for name, (res, fn) in ops.items():
            assert res.contains(pt) == fn(u, v), name
    assert a.coalesce().set_equals(a)
    assert a.union(b).set_equals(b.union(a))


@settings(max_examples=100, deadline=None)
@given(systems(3, max_rows=4))
def test_cylindrification_commutes(system):
    c = poly(XYP, system)
    assert c.cylindrify("x").cylindrify("y") == c.cylindrify("y").cylindrify("x")


def test_parse_atoms_chains():
    atoms = parse_atoms("0 <= x < p + 1 & true")
    assert len(atoms) == 2
