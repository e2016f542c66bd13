"""Ground truth on instantiated timed automata, for cross-checking synthesis."""
from .grid import GridEntry, GridReport, Oracle, grid_check, rational_grid
from .zones import ZoneGraph, bounded_reachable, reachable, trace_equal, unavoidable

__all__ = [
    "GridEntry", "GridReport", "Oracle", "ZoneGraph", "bounded_reachable",
    "grid_check", "rational_grid", "reachable", "trace_equal", "unavoidable",
]
