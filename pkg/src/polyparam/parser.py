"""Line-oriented model files and the property micro-grammar.

A model file looks like::

    clocks: x, y
    params: p in [0, 2]; q in [0, 2]
    init: l0
    loc l0 inv: x <= p        # comment
    loc l1
    edge l0 -> l1 on a when 1 <= x & x <= 2*p reset {x}
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import ModelError, ValidationError
from .kernel.linear import parse_atoms
from .model import PTA, ClockAtom, Edge, ParamDomain, validate
from .properties import Property, Reach, TracePreserve, Unavoid

_IDENT = r"[A-Za-z_][A-Za-z_0-9']*"
_PARAM = re.compile(rf"\s*({_IDENT})\s*(?:in\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\])?\s*$")
_LOC = re.compile(rf"loc\s+({_IDENT})\s*(?:inv\s*:\s*(.*))?$")
_EDGE = re.compile(
    rf"edge\s+(?P<src>{_IDENT})\s*->\s*(?P<dst>{_IDENT})"
    rf"(?:\s+on\s+(?P<act>{_IDENT}))?"
    r"(?:\s+when\s+(?P<guard>.*?))?"
    r"(?:\s+reset\s*\{(?P<resets>[^}]*)\})?\s*$"
)


def _names(text: str, lineno: int, col: int) -> list[str]:
    out = []
    for part in text.split(","):
        name = part.strip()
        if not name:
            continue
        if not re.fullmatch(_IDENT, name):
            raise ModelError(f"bad identifier {name!r}", lineno, col + text.index(part) + 1)
        out.append(name)
    return out


def _guard(text: str, clocks, lineno: int, col: int) -> tuple[ClockAtom, ...]:
    try:
        atoms = parse_atoms(text)
    except ModelError as exc:
        raise ModelError(exc.message, lineno, col + (exc.column or 1)) from None
    try:
        return tuple(ClockAtom.from_atom(a, clocks) for a in atoms)
    except ModelError as exc:
        raise ModelError(exc.message, lineno, col + 1) from None


def parse_model(text: str) -> PTA:
    """Parse and validate a model file."""
    clocks: list[str] | None = None
    params: list[str] = []
    bounds: list[tuple[str, int, int]] = []
    init = None
    locations: list[str] = []
    invariants = {}
    pending_inv = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.lstrip()
        if not body:
            continue
        col = len(line) - len(body)
        key = body.split(":", 1)[0].strip() if ":" in body else ""
        if key in ("clocks", "params", "init") and body.startswith(key):
            rest = body.split(":", 1)[1]
            rcol = col + len(body) - len(rest)
            if key == "clocks":
                clocks = _names(rest, lineno, rcol)
            elif key == "init":
                names = _names(rest, lineno, rcol)
                if len(names) != 1:
                    raise ModelError("init needs exactly one location", lineno, rcol + 1)
                init = names[0]
            else:
                offset = 0
                for part in rest.split(";"):
                    if part.strip():
                        m = _PARAM.match(part)
                        if not m:
                            raise ModelError(
                                f"expected 'name in [lo, hi]', got {part.strip()!r}",
                                lineno, rcol + offset + 1,
                            )
                        params.append(m.group(1))
                        if m.group(2) is not None:
                            bounds.append((m.group(1), int(m.group(2)), int(m.group(3))))
                    offset += len(part) + 1
            continue
        if body.startswith("loc"):
            m = _LOC.match(body)
            if not m:
                raise ModelError("expected 'loc <name> [inv: <constraint>]'", lineno, col + 1)
            locations.append(m.group(1))
            if m.group(2) is not None and m.group(2).strip():
                pending_inv.append((m.group(1), m.group(2), lineno, col + m.start(2)))
            continue
        if body.startswith("edge"):
            m = _EDGE.match(body)
            if not m:
                raise ModelError(
                    "expected 'edge <src> -> <dst> on <action> [when <guard>] [reset {..}]'",
                    lineno, col + 1,
                )
            if m.group("act") is None:
                raise ModelError("edge needs an action ('on <name>')", lineno, col + 1)
            edges.append((m, lineno, col))
            continue
        raise ModelError(f"unrecognized line {body!r}", lineno, col + 1)

    if clocks is None:
        clocks = []
    if init is None:
        if not locations:
            raise ModelError("model declares no location")
        raise ModelError("missing 'init:' line")
    for loc, inv, lineno, col in pending_inv:
        invariants[loc] = _guard(inv, clocks, lineno, col)
    built = []
    for m, lineno, col in edges:
        guard = ()
        if m.group("guard") is not None:
            guard = _guard(m.group("guard"), clocks, lineno, col + m.start("guard"))
        resets = ()
        if m.group("resets") is not None:
            resets = tuple(_names(m.group("resets"), lineno, col + m.start("resets")))
        built.append(Edge(m.group("src"), m.group("dst"), m.group("act"), guard, resets))
    pta = PTA(
        clocks=tuple(clocks),
        params=tuple(params),
        domain=ParamDomain(tuple(bounds)),
        locations=tuple(locations),
        initial=init,
        invariants=invariants,
        edges=tuple(built),
    )
    validate(pta)
    return pta


def load_model(path) -> PTA:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def _atoms_text(atoms, params) -> str:
    return " & ".join(a.to_text(params) for a in atoms) if atoms else "true"


def format_model(pta: PTA) -> str:
    """Canonical model text; :func:`parse_model` reads it back unchanged."""
    lines = [f"clocks: {', '.join(pta.clocks)}".rstrip()]
    lines.append(
        "params: " + "; ".join(f"{n} in [{lo}, {hi}]" for n, lo, hi in pta.domain.bounds)
    )
    lines[-1] = lines[-1].rstrip()
    lines.append(f"init: {pta.initial}")
    for loc in pta.locations:
        inv = pta.invariant(loc)
        lines.append(f"loc {loc} inv: {_atoms_text(inv, pta.params)}" if inv else f"loc {loc}")
    for e in pta.edges:
        text = f"edge {e.source} -> {e.target} on {e.action}"
        if e.guard:
            text += f" when {_atoms_text(e.guard, pta.params)}"
        if e.resets:
            text += " reset {" + ", ".join(e.resets) + "}"
        lines.append(text)
    return "\n".join(lines) + "\n"


_GOALS = re.compile(rf"\s*(EF|AF)\s*\{{\s*({_IDENT}(?:\s*,\s*{_IDENT})*)\s*\}}\s*$")
_TP = re.compile(r"\s*TP\s+at\s+(.*)$")


def parse_property(text: str, pta: PTA | None = None) -> Property:
    """``EF {l1, l2}``, ``AF {l1}`` or ``TP at p=1, q=2`` (integers only)."""
    m = _GOALS.match(text)
    if m:
        goals = frozenset(g.strip() for g in m.group(2).split(","))
        if pta is not None:
            unknown = sorted(goals - set(pta.locations))
            if unknown:
                raise ModelError(f"unknown goal location(s): {', '.join(unknown)}")
        return (Reach if m.group(1) == "EF" else Unavoid)(goals)
    m = _TP.match(text)
    if m:
        values = {}
        for part in m.group(1).split(","):
            pm = re.fullmatch(rf"\s*({_IDENT})\s*=\s*(\S+)\s*", part)
            if not pm:
                raise ModelError(f"expected 'name=value', got {part.strip()!r}")
            try:
                val = Fraction(pm.group(2))
            except ValueError:
                raise ModelError(f"bad value {pm.group(2)!r}") from None
            if val.denominator != 1:
                raise ModelError(f"reference value {pm.group(1)}={val} must be an integer")
            values[pm.group(1)] = int(val)
        if pta is not None:
            missing = [p for p in pta.params if p not in values]
            extra = [p for p in values if p not in pta.params]
            if missing or extra:
                raise ValidationError(
                    [f"missing value for {p}" for p in missing]
                    + [f"{p} is not a parameter" for p in extra]
                )
            values = {p: values[p] for p in pta.params}
        return TracePreserve.at(values)
    raise ModelError(f"cannot parse property {text!r}; expected 'EF {{..}}', 'AF {{..}}' or 'TP at ..'")
