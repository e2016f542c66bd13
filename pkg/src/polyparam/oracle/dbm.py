"""Difference bound matrices over integer constants.

Entry ``d[i][j]`` bounds ``x_i - x_j`` where index 0 is the constant zero
clock.  A bound is encoded as one int: ``2*c + 1`` for ``<= c`` and ``2*c``
for ``< c``, so comparing encodings compares bounds.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

INF = 1 << 62
LE_ZERO = 1


def enc(c: int, strict: bool) -> int:
    return 2 * c + (0 if strict else 1)


def dec(b: int) -> tuple[int, bool]:
    return b >> 1, not (b & 1)


def add(a: int, b: int) -> int:
    if a >= INF or b >= INF:
        return INF
    return 2 * ((a >> 1) + (b >> 1)) + (a & b & 1)


def negate(b: int) -> int:
    """Encoding of the complement of ``x_i - x_j (b)`` as a bound on ``x_j - x_i``."""
    return 1 - b


class DBM:
    __slots__ = ("n", "d")

    def __init__(self, n: int, d: list[list[int]] | None = None):
        self.n = n
        self.d = d if d is not None else [[LE_ZERO] * (n + 1) for _ in range(n + 1)]

    @classmethod
    def zero(cls, n: int) -> "DBM":
        return cls(n)

    @classmethod
    def universe(cls, n: int) -> "DBM":
        d = [[INF] * (n + 1) for _ in range(n + 1)]
        for i in range(n + 1):
            d[i][i] = LE_ZERO
            d[0][i] = LE_ZERO  # clocks are nonnegative
        return cls(n, d)

    def copy(self) -> "DBM":
        return DBM(self.n, [row[:] for row in self.d])

    def key(self) -> tuple:
        return tuple(map(tuple, self.d))

    def close(self) -> "DBM":
        d, size = self.d, self.n + 1
        for k in range(size):
            dk = d[k]
            for i in range(size):
                dik = d[i][k]
                if dik >= INF:
                    continue
                di = d[i]
                for j in range(size):
                    v = add(dik, dk[j])
                    if v < di[j]:
                        di[j] = v
        return self

    def is_empty(self) -> bool:
        return any(self.d[i][i] < LE_ZERO for i in range(self.n + 1))

    def constrain(self, i: int, j: int, b: int) -> "DBM":
        if b < self.d[i][j]:
            self.d[i][j] = b
            self.close()
        return self

    def intersect(self, other: "DBM") -> "DBM":
        out = self.copy()
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                if other.d[i][j] < out.d[i][j]:
                    out.d[i][j] = other.d[i][j]
        return out.close()

    def up(self) -> "DBM":
        out = self.copy()
        for i in range(1, self.n + 1):
            out.d[i][0] = INF
        return out

    def down(self) -> "DBM":
        out = self.copy()
        for i in range(1, self.n + 1):
            out.d[0][i] = LE_ZERO
        return out.close()

    def reset(self, clocks: Iterable[int]) -> "DBM":
        out = self.copy()
        d = out.d
        for i in clocks:
            for j in range(self.n + 1):
                d[i][j] = d[0][j]
                d[j][i] = d[j][0]
            d[i][i] = LE_ZERO
        return out

    def extrapolate(self, bound: int) -> "DBM":
        """Classical maximal-constant abstraction with one constant for all clocks."""
        out = self.copy()
        hi, lo = enc(bound, False), enc(-bound, True)
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                if i == j:
                    continue
                b = out.d[i][j]
                if b < INF and b > hi:
                    out.d[i][j] = INF
                elif b < lo:
                    out.d[i][j] = lo
        return out.close()

    def includes(self, other: "DBM") -> bool:
        return all(
            other.d[i][j] <= self.d[i][j] for i in range(self.n + 1) for j in range(self.n + 1)
        )

    def subtract(self, other: "DBM") -> list["DBM"]:
        """``self \\ other`` as disjoint DBMs."""
        if self.is_empty():
            return []
        if self.intersect(other).is_empty():
            return [self]
        out = []
        rest = self.copy()
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                b = other.d[i][j]
                if i == j or b >= INF or rest.d[i][j] <= b:
                    continue
                piece = rest.copy().constrain(j, i, negate(b))
                if not piece.is_empty():
                    out.append(piece)
                rest = rest.constrain(i, j, b)
                if rest.is_empty():
                    return out
        return out

    def contains(self, point: list[Fraction]) -> bool:
        vals = [Fraction(0)] + list(point)
        for i in range(self.n + 1):
            for j in range(self.n + 1):
                b = self.d[i][j]
                if b >= INF:
                    continue
                c, strict = dec(b)
                diff = vals[i] - vals[j]
                if diff > c or (strict and diff == c):
                    return False
        return True
