"""Exact rational polyhedra over clocks and parameters."""
from .linear import AtomicConstraint, LinearTerm, VarSpace, parse_term
from .polyhedron import Polyhedron
from .polyset import PolyhedralSet

__all__ = ["AtomicConstraint", "LinearTerm", "Polyhedron", "PolyhedralSet", "VarSpace", "parse_term"]
