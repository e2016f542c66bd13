"""Hypothesis strategies and small builders shared by the test modules."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from polyparam.kernel.linear import VarSpace
from polyparam.kernel.polyhedron import Polyhedron

from oracles import system_text

XP = VarSpace(("x",), ("p",))
XYP = VarSpace(("x", "y"), ("p",))
PQ = VarSpace((), ("p", "q"))


def systems(dim: int, max_rows: int = 4, strict: bool = True, eqs: bool = True):
    """Random linear systems in the format used by ``oracles``."""
    rels = ["<=", "<"] if strict else ["<="]
    if eqs:
        rels.append("=")
    coeff = st.integers(-2, 2)
    row = st.tuples(
        st.tuples(*[coeff] * dim).filter(any),
        st.integers(-4, 4),
        st.sampled_from(rels),
    ).map(lambda r: (tuple(map(Fraction, r[0])), Fraction(r[1]), r[2]))
    return st.lists(row, min_size=0, max_size=max_rows)


def boxed(system, dim: int, lo: int = -3, hi: int = 3):
    """Add ``lo <= v <= hi`` for each coordinate."""
    out = list(system)
    for i in range(dim):
        unit = tuple(Fraction(int(i == j)) for j in range(dim))
        out.append((tuple(-u for u in unit), Fraction(lo), "<="))
        out.append((unit, Fraction(-hi), "<="))
    return out


def poly(space: VarSpace, system) -> Polyhedron:
    return Polyhedron(space, system_text(system, space.names))
