"""Terminating parameter synthesis for bounded parametric timed automata."""
from .errors import (
    BoxTooLarge,
    ModelError,
    PolyparamError,
    SpaceMismatch,
    StateCeilingExceeded,
    UnsupportedInput,
    ValidationError,
)
from .kernel import LinearTerm, Polyhedron, PolyhedralSet, VarSpace
from .model import PTA, ClockAtom, ConcreteTA, Edge, ParamDomain, instantiate, max_constant, validate
from .oracle import grid_check, reachable, trace_equal, unavoidable
from .parser import format_model, load_model, parse_model, parse_property
from .properties import Reach, TracePreserve, Unavoid
from .symbolic import Semantics, SymbolicState
from .synthesis import SynthesisRequest, SynthesisResult, export_dot, riaf, rief, ritp, synthesize

__version__ = "0.1.0"

__all__ = [
    "BoxTooLarge", "ClockAtom", "ConcreteTA", "Edge", "LinearTerm", "ModelError", "PTA",
    "ParamDomain", "PolyhedralSet", "Polyhedron", "PolyparamError", "Reach", "Semantics",
    "SpaceMismatch", "StateCeilingExceeded", "SymbolicState", "SynthesisRequest",
    "SynthesisResult", "TracePreserve", "Unavoid", "UnsupportedInput", "ValidationError",
    "VarSpace", "export_dot", "format_model", "grid_check", "instantiate", "load_model",
    "max_constant", "parse_model", "parse_property", "reachable", "riaf", "rief", "ritp",
    "synthesize", "trace_equal", "unavoidable", "validate",
]
