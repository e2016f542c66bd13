"""Double description method on integer cones.

A cone is ``{y : e.y = 0 for e in eqs, a.y >= 0 for a in ineqs}``.  The
routines here convert it to generator form (a basis of its lineality space
plus its extreme rays) and back.  All vectors are tuples of Python ints;
every vector produced is primitive (gcd of its entries is 1).
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Iterable[int]) -> Vector:
    v = tuple(v)
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return v
    if g == 0:
        return v
    return tuple(x // g for x in v)


def _combine(ca: int, a: Sequence[int], cb: int, b: Sequence[int]) -> Vector:
    return primitive(ca * x + cb * y for x, y in zip(a, b))


class Cone:
    """Incremental double-description state.

    ``lines`` spans the lineality space, ``rays`` holds the extreme rays of
    the pointed part and ``sat`` the bitmask of processed constraints each
    ray saturates.
    """

    __slots__ = ("dim", "lines", "rays", "sat", "count")

    def __init__(self, dim: int):
        self.dim = dim
        self.lines: list[Vector] = [
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        ]
        self.rays: list[Vector] = []
        self.sat: list[int] = []
        self.count = 0

    def copy(self) -> "Cone":
        c = Cone.__new__(Cone)
        c.dim = self.dim
        c.lines = list(self.lines)
        c.rays = list(self.rays)
        c.sat = list(self.sat)
        c.count = self.count
        return c

    def add(self, a: Sequence[int], equality: bool = False) -> None:
        bit = 1 << self.count
        self.count += 1
        # a line that crosses the hyperplane absorbs the constraint
        for idx, line in enumerate(self.lines):
            s0 = dot(a, line)
            if s0:
                if s0 < 0:
                    line = tuple(-x for x in line)
                    s0 = -s0
                del self.lines[idx]
                lines = []
                for other in self.lines:
                    s = dot(a, other)
                    lines.append(_combine(s0, other, -s, line) if s else other)
                self.lines = lines
                rays = []
                for r in self.rays:
                    s = dot(a, r)
                    rays.append(_combine(s0, r, -s, line) if s else r)
                self.rays = rays
                self.sat = [m | bit for m in self.sat]
                if not equality:
                    self.rays.append(primitive(line))
                    self.sat.append(bit - 1)
                return

        pos, zero, neg = [], [], []
        for i, r in enumerate(self.rays):
            s = dot(a, r)
            if s > 0:
                pos.append((i, s))
            elif s < 0:
                neg.append((i, s))
            else:
                zero.append(i)

        if not neg and (not equality or not pos):
            for i in zero:
                self.sat[i] |= bit
            return

        rays, sat = self.rays, self.sat
        new_rays: list[Vector] = []
        new_sat: list[int] = []
        if not equality:
            for i, _ in pos:
                new_rays.append(rays[i])
                new_sat.append(sat[i])
        for i in zero:
            new_rays.append(rays[i])
            new_sat.append(sat[i] | bit)

        # adjacency: two rays are adjacent iff no third ray saturates every
        # constraint they both saturate
        need = self.dim - len(self.lines) - 2
        n_rays = len(rays)
        for i, si in pos:
            ri, mi = rays[i], sat[i]
            for j, sj in neg:
                common = mi & sat[j]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for k in range(n_rays):
                    if k != i and k != j and common & ~sat[k] == 0:
                        adjacent = False
                        break
                if adjacent:
                    new_rays.append(_combine(si, rays[j], -sj, ri))
                    new_sat.append(common | bit)
        self.rays = new_rays
        self.sat = new_sat


def generators(
    dim: int, eqs: Iterable[Sequence[int]], ineqs: Iterable[Sequence[int]]
) -> Cone:
    cone = Cone(dim)
    for e in eqs:
        cone.add(e, equality=True)
    for a in ineqs:
        cone.add(a)
    return cone


def constraints(
    dim: int, lines: Iterable[Sequence[int]], rays: Iterable[Sequence[int]]
) -> tuple[list[Vector], list[Vector]]:
    """Minimal H-representation ``(eqs, ineqs)`` of ``cone(rays) + span(lines)``.

    The inequalities returned are exactly the facets; equalities span the
    orthogonal complement of the cone's linear hull.
    """
    polar = generators(dim, lines, rays)
    return list(polar.lines), list(polar.rays)
