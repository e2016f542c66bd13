"""Variable spaces, linear terms and atomic constraints."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

from ..errors import ModelError

Number = Union[int, Fraction]

LE, LT, EQ = "<=", "<", "="
RELATIONS = ("<", "<=", "=", ">=", ">")


@dataclass(frozen=True)
class VarSpace:
    """Ordered variables: clocks first, then parameters."""

    clocks: tuple[str, ...] = ()
    params: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clocks", tuple(self.clocks))
        object.__setattr__(self, "params", tuple(self.params))
        names = self.clocks + self.params
        if len(set(names)) != len(names):
            raise ModelError(f"duplicate variable names in {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return self.clocks + self.params

    @property
    def dim(self) -> int:
        return len(self.clocks) + len(self.params)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ModelError(f"unknown variable {name!r}") from None

    def is_clock(self, name: str) -> bool:
        return name in self.clocks

    def param_space(self) -> "VarSpace":
        return VarSpace((), self.params)

    def clock_space(self) -> "VarSpace":
        return VarSpace(self.clocks, ())

    def __str__(self):
        return f"({', '.join(self.clocks)}; {', '.join(self.params)})"


@dataclass(frozen=True)
class LinearTerm:
    """``sum(coeffs[v] * v) + constant``; zero coefficients are dropped."""

    coeffs: Mapping[str, Fraction] = field(default_factory=dict)
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        clean = {v: Fraction(c) for v, c in dict(self.coeffs).items() if c != 0}
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "constant", Fraction(self.constant))

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.constant))

    @classmethod
    def var(cls, name: str) -> "LinearTerm":
        return cls({name: Fraction(1)})

    @classmethod
    def const(cls, value: Number) -> "LinearTerm":
        return cls({}, Fraction(value))

    def variables(self) -> set[str]:
        return set(self.coeffs)

    def __add__(self, other):
        other = _as_term(other)
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, 0) + c
        return LinearTerm(coeffs, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self):
        return LinearTerm({v: -c for v, c in self.coeffs.items()}, -self.constant)

    def __sub__(self, other):
        return self + (-_as_term(other))

    def __rsub__(self, other):
        return _as_term(other) - self

    def __mul__(self, k):
        if isinstance(k, LinearTerm):
            if k.coeffs and self.coeffs:
                raise ModelError("product of two non-constant terms is not linear")
            if k.coeffs:
                return k * self.constant
            k = k.constant
        k = Fraction(k)
        return LinearTerm({v: c * k for v, c in self.coeffs.items()}, self.constant * k)

    __rmul__ = __mul__

    def substitute(self, values: Mapping[str, Number]) -> "LinearTerm":
        coeffs, const = {}, self.constant
        for v, c in self.coeffs.items():
            if v in values:
                const += c * Fraction(values[v])
            else:
                coeffs[v] = c
        return LinearTerm(coeffs, const)

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        t = self.substitute(values)
        if t.coeffs:
            raise ModelError(f"missing values for {sorted(t.coeffs)}")
        return t.constant

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values()) and (
            self.constant.denominator == 1
        )

    def to_text(self, order: Iterable[str] | None = None) -> str:
        names = list(order) if order is not None else sorted(self.coeffs)
        names += sorted(set(self.coeffs) - set(names))
        parts = [(self.coeffs[v], v) for v in names if v in self.coeffs]
        if self.constant or not parts:
            parts.append((self.constant, None))
        return format_terms(parts)

    def __str__(self):
        return self.to_text()


def _as_term(x) -> LinearTerm:
    if isinstance(x, LinearTerm):
        return x
    return LinearTerm.const(Fraction(x))


def _fmt_num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(parts: list[tuple[Fraction, str | None]]) -> str:
    out = []
    for i, (c, v) in enumerate(parts):
        neg = c < 0
        mag = -c if neg else c
        if v is None:
            body = _fmt_num(mag)
        elif mag == 1:
            body = v
        else:
            body = f"{_fmt_num(mag)}*{v}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


@dataclass(frozen=True)
class AtomicConstraint:
    """``term relation 0``."""

    term: LinearTerm
    relation: str

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ModelError(f"unknown relation {self.relation!r}")

    @classmethod
    def compare(cls, lhs, rel: str, rhs) -> "AtomicConstraint":
        return cls(_as_term(lhs) - _as_term(rhs), rel)

    def normalized(self) -> "AtomicConstraint":
        """Equivalent atom using only ``<=``, ``<`` or ``=``."""
        t, rel = self.term, self.relation
        if rel in (">=", ">"):
            t, rel = -t, {">=": LE, ">": LT}[rel]
        if rel == EQ and t.coeffs:
            lead = min(t.coeffs, key=lambda v: v)  # any fixed choice
            if t.coeffs[lead] < 0:
                t = -t
        return AtomicConstraint(t, rel)

    def negated(self) -> list["AtomicConstraint"]:
        """Atoms whose disjunction is the complement of this one."""
        a = self.normalized()
        if a.relation == LE:
            return [AtomicConstraint(-a.term, LT)]
        if a.relation == LT:
            return [AtomicConstraint(-a.term, LE)]
        return [AtomicConstraint(a.term, LT), AtomicConstraint(-a.term, LT)]

    def holds(self, values: Mapping[str, Number]) -> bool:
        v = self.term.evaluate(values)
        return {
            "<": v < 0,
            "<=": v <= 0,
            "=": v == 0,
            ">=": v >= 0,
            ">": v > 0,
        }[self.relation]

    def variables(self) -> set[str]:
        return self.term.variables()

    def substitute(self, values: Mapping[str, Number]) -> "AtomicConstraint":
        return AtomicConstraint(self.term.substitute(values), self.relation)

    def __str__(self):
        return f"{self.term} {self.relation} 0"


def integer_row(term: LinearTerm, names: tuple[str, ...]) -> tuple[int, ...]:
    """``(constant, coeff_1, ..., coeff_n)`` scaled to coprime integers."""
    for v in term.coeffs:
        if v not in names:
            raise ModelError(f"unknown variable {v!r}")
    vals = [term.constant] + [term.coeffs.get(v, Fraction(0)) for v in names]
    den = lcm(*(c.denominator for c in vals))
    from .dd import primitive

    return primitive(int(c * den) for c in vals)


# --- text parsing -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<op><=|>=|==|<|>|=|\+|-|\*|\(|\)))"
)


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        while True:
            while self.pos < len(text) and text[self.pos].isspace():
                self.pos += 1
            if self.pos >= len(text):
                break
            m = _TOKEN.match(text, self.pos)
            if not m or m.end() == self.pos:
                raise ModelError(f"unexpected character {text[self.pos]!r}", column=self.pos + 1)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            self.pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok


def _parse_expr(lx: _Lexer) -> LinearTerm:
    term = _parse_product(lx)
    while lx.peek()[1] in ("+", "-"):
        op = lx.next()[1]
        rhs = _parse_product(lx)
        term = term + rhs if op == "+" else term - rhs
    return term


def _parse_product(lx: _Lexer) -> LinearTerm:
    term = _parse_atom(lx)
    while lx.peek()[1] == "*":
        lx.next()
        term = term * _parse_atom(lx)
    return term


def _parse_atom(lx: _Lexer) -> LinearTerm:
    kind, val, col = lx.next()
    if kind == "num":
        return LinearTerm.const(Fraction(val))
    if kind == "name":
        return LinearTerm.var(val)
    if val == "-":
        return -_parse_atom(lx)
    if val == "+":
        return _parse_atom(lx)
    if val == "(":
        t = _parse_expr(lx)
        if lx.next()[1] != ")":
            raise ModelError("expected ')'", column=col + 1)
        return t
    raise ModelError(f"unexpected token {val!r}", column=col + 1)


def parse_atoms(text: str) -> list[AtomicConstraint]:
    """Parse ``a <= b & c < d <= e & true`` into atoms (chains allowed)."""
    atoms: list[AtomicConstraint] = []
    text = text.strip()
    if not text:
        return atoms
    offset = 0
    for part in text.split("&"):
        stripped = part.strip()
        if stripped.lower() != "true":
            try:
                atoms.extend(_parse_chain(stripped))
            except ModelError as exc:
                if exc.column is not None:
                    exc.column += offset + part.index(stripped) if stripped else offset
                raise
        offset += len(part) + 1
    return atoms


def _parse_chain(text: str) -> list[AtomicConstraint]:
    lx = _Lexer(text)
    terms = [_parse_expr(lx)]
    rels = []
    while True:
        kind, val, col = lx.peek()
        if kind is None:
            break
        if val not in ("<", "<=", "=", "==", ">=", ">"):
            raise ModelError(f"unexpected token {val!r}", column=col + 1)
        lx.next()
        rels.append("=" if val == "==" else val)
        terms.append(_parse_expr(lx))
    if not rels:
        raise ModelError(f"missing relation in {text!r}", column=1)
    return [
        AtomicConstraint.compare(terms[i], rels[i], terms[i + 1]) for i in range(len(rels))
    ]


def parse_term(text: str) -> LinearTerm:
    lx = _Lexer(text)
    t = _parse_expr(lx)
    if lx.peek()[0] is not None:
        raise ModelError(f"trailing input in {text!r}", column=lx.peek()[2] + 1)
    return t
