"""Compare a synthesized parameter set against the oracle on a valuation grid."""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import BoxTooLarge
from ..kernel.polyset import PolyhedralSet
from ..model import PTA, ConcreteTA, instantiate
from ..properties import Property, Reach, TracePreserve, Unavoid
from .zones import reachable, trace_equal, unavoidable

MAX_GRID = 10_000
SAMPLE_DENOMINATORS = (2, 3, 4)


class Oracle:
    """Decides a property on single parameter valuations of one PTA."""

    def __init__(self, pta: PTA, prop: Property):
        self.pta = pta
        self.prop = prop
        self._reference: ConcreteTA | None = None
        if isinstance(prop, TracePreserve):
            self._reference = instantiate(pta, prop.valuation).rescale()

    def __call__(self, valuation: Mapping[str, object]) -> bool:
        ta = instantiate(self.pta, valuation)
        if isinstance(self.prop, Reach):
            return reachable(ta, self.prop.goals)
        if isinstance(self.prop, Unavoid):
            return unavoidable(ta, self.prop.goals)
        return trace_equal(ta, self._reference)


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class GridEntry:
    valuation: tuple[tuple[str, Fraction], ...]
    integer: bool
    in_result: bool
    oracle: bool

    @property
    def verdict(self) -> str:
        """``ok``, ``unsound`` (in the result, property fails) or ``missing``
        (integer valuation satisfying the property but absent)."""
        if self.in_result and not self.oracle:
            return "unsound"
        if self.integer and self.oracle and not self.in_result:
            return "missing"
        return "ok"

    @property
    def agrees(self) -> bool:
        return self.verdict == "ok"

    def label(self) -> str:
        return ", ".join(f"{k}={_fmt(v)}" for k, v in self.valuation)

    def to_json(self) -> dict:
        return {
            "valuation": {k: _fmt(v) for k, v in self.valuation},
            "integer": self.integer,
            "in_result": self.in_result,
            "oracle": self.oracle,
            "verdict": self.verdict,
        }


@dataclass
class GridReport:
    property: str
    entries: list[GridEntry] = field(default_factory=list)

    @property
    def disagreements(self) -> list[GridEntry]:
        return [e for e in self.entries if not e.agrees]

    @property
    def integer_disagreements(self) -> list[GridEntry]:
        return [e for e in self.entries if e.integer and not e.agrees]

    @property
    def soundness_violations(self) -> list[GridEntry]:
        return [e for e in self.entries if e.verdict == "unsound"]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def find(self, valuation: Mapping[str, object]) -> GridEntry | None:
        want = {k: Fraction(v) for k, v in valuation.items()}
        for e in self.entries:
            if dict(e.valuation) == want:
                return e
        return None

    def to_json(self) -> str:
        body = {
            "property": self.property,
            "entries": [e.to_json() for e in self.entries],
            "disagreements": len(self.disagreements),
            "integer_points": sum(e.integer for e in self.entries),
            "rational_samples": sum(not e.integer for e in self.entries),
        }
        return json.dumps(body, sort_keys=True, indent=2)

    def to_table(self) -> str:
        rows = [("valuation", "kind", "in result", "oracle", "verdict")]
        for e in self.entries:
            rows.append((
                e.label(), "integer" if e.integer else "rational",
                "yes" if e.in_result else "no", "yes" if e.oracle else "no", e.verdict,
            ))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append(f"{len(self.disagreements)} disagreement(s) over {len(self.entries)} valuation(s)")
        return "\n".join(lines)


def rational_grid(pta: PTA, denominators: Iterable[int] = SAMPLE_DENOMINATORS) -> list[dict]:
    """Non-integer points of the parameter box with the given denominators."""
    axes = []
    for _, lo, hi in pta.domain.bounds:
        vals = {Fraction(k, d) for d in denominators for k in range(lo * d, hi * d + 1)}
        axes.append(sorted(vals))
    out = []
    for combo in itertools.product(*axes):
        if any(v.denominator != 1 for v in combo):
            out.append(dict(zip(pta.domain.names, combo)))
    return out


def grid_check(
    pta: PTA,
    prop: Property,
    result: PolyhedralSet,
    rational_samples: int = 10,
    rational_points: Iterable[Mapping[str, object]] = (),
    seed: int = 0,
) -> GridReport:
    """Every integer valuation of the box must agree with the oracle; rational
    samples are only checked for soundness."""
    ints = pta.domain.integer_points()
    if len(ints) > MAX_GRID:
        raise BoxTooLarge(f"{len(ints)} integer valuations exceed the limit of {MAX_GRID}")
    oracle = Oracle(pta, prop)
    report = GridReport(str(prop))
    names = pta.params

    def entry(v, integer):
        key = tuple((p, Fraction(v[p])) for p in names)
        return GridEntry(key, integer, result.contains(dict(key)), oracle(dict(key)))

    for v in ints:
        report.entries.append(entry(v, True))
    chosen = [dict(v) for v in rational_points]
    if rational_samples:
        grid = rational_grid(pta)
        rng = random.Random(seed)
        inside = [v for v in grid if result.contains(v)]
        outside = [v for v in grid if not result.contains(v)]
        k_in = min(len(inside), rational_samples)
        chosen += rng.sample(inside, k_in)
        chosen += rng.sample(outside, min(len(outside), rational_samples - k_in))
    seen = set()
    rational = []
    for v in chosen:
        key = tuple(Fraction(v[p]) for p in names)
        if key not in seen:
            seen.add(key)
            rational.append(v)
    rational.sort(key=lambda v: tuple(Fraction(v[p]) for p in names))
    for v in rational:
        integer = all(Fraction(v[p]).denominator == 1 for p in names)
        report.entries.append(entry(v, integer))
    return report
