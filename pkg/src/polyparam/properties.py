"""Synthesis objectives."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class Reach:
    """Some run visits a goal location."""

    goals: frozenset[str]

    def __str__(self):
        return f"EF {{{', '.join(sorted(self.goals))}}}"


@dataclass(frozen=True)
class Unavoid:
    """Every maximal run visits a goal location."""

    goals: frozenset[str]

    def __str__(self):
        return f"AF {{{', '.join(sorted(self.goals))}}}"


@dataclass(frozen=True)
class TracePreserve:
    """Same trace set as under the reference valuation."""

    reference: tuple[tuple[str, Fraction], ...]

    @classmethod
    def at(cls, valuation: Mapping[str, object]) -> "TracePreserve":
        return cls(tuple((k, Fraction(v)) for k, v in valuation.items()))

    @property
    def valuation(self) -> dict[str, Fraction]:
        return dict(self.reference)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for _, v in self.reference)

    def __str__(self):
        return "TP at " + ", ".join(f"{k}={v}" for k, v in self.reference)


Property = Reach | Unavoid | TracePreserve
