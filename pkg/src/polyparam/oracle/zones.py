"""Zone graphs of concrete timed automata and the questions asked of them."""
from __future__ import annotations

from collections import deque
from typing import Iterable

from ..errors import ModelError
from ..model import ConcreteAtom, ConcreteTA
from .dbm import DBM, enc


def _atom_bounds(atom: ConcreteAtom, idx: int):
    c = int(atom.value)
    rel = atom.relation
    if rel in ("<=", "<", "="):
        yield idx, 0, enc(c, rel == "<")
    if rel in (">=", ">", "="):
        yield 0, idx, enc(-c, rel == ">")


def constraint_dbm(n: int, index: dict[str, int], atoms: Iterable[ConcreteAtom]) -> DBM:
    z = DBM.universe(n)
    for a in atoms:
        for i, j, b in _atom_bounds(a, index[a.clock]):
            if b < z.d[i][j]:
                z.d[i][j] = b
    return z.close()


def _integral(ta: ConcreteTA) -> ConcreteTA:
    return ta if ta.is_integral() else ta.rescale()


class ZoneGraph:
    """Forward zone graph.

    With ``extrapolate`` the graph is finite; without it exploration stops
    at ``max_depth`` edges from the root.  Locations in ``stop_at`` are not
    expanded.
    """

    def __init__(
        self,
        ta: ConcreteTA,
        extrapolate: bool = True,
        max_depth: int | None = None,
        bound: int | None = None,
        stop_at: Iterable[str] = (),
    ):
        ta = _integral(ta)
        self.ta = ta
        self.n = len(ta.clocks)
        self.index = {x: i + 1 for i, x in enumerate(ta.clocks)}
        consts = [abs(int(c)) for c in ta.constants()]
        self.bound = max(consts, default=0) if bound is None else bound
        self.extrapolate = extrapolate
        self.inv = {l: constraint_dbm(self.n, self.index, ta.invariants.get(l, ())) for l in ta.locations}
        self.guards = [constraint_dbm(self.n, self.index, e.guard) for e in ta.edges]
        self.resets = [[self.index[x] for x in e.resets] for e in ta.edges]
        self.out = {l: [k for k, e in enumerate(ta.edges) if e.source == l] for l in ta.locations}
        self.nodes: list[tuple[str, DBM]] = []
        self.succ: list[list[tuple[int, int]]] = []
        self.depth: list[int] = []
        self._ids: dict[tuple, int] = {}
        stop = set(stop_at)
        self.initial = self._add(ta.initial, self._initial_zone(), 0)
        if self.initial is None:
            return
        queue = deque([self.initial])
        while queue:
            node = queue.popleft()
            loc, z = self.nodes[node]
            if loc in stop:
                continue
            if max_depth is not None and self.depth[node] >= max_depth:
                continue
            for k in self.out[loc]:
                zz = self.post(z, k)
                if zz is None:
                    continue
                target = ta.edges[k].target
                fresh = (target, zz.key()) not in self._ids
                nid = self._add(target, zz, self.depth[node] + 1)
                self.succ[node].append((k, nid))
                if fresh:
                    queue.append(nid)

    def _normalize(self, z: DBM) -> DBM:
        return z.extrapolate(self.bound) if self.extrapolate else z

    def _initial_zone(self) -> DBM | None:
        inv = self.inv[self.ta.initial]
        z = DBM.zero(self.n).intersect(inv)
        if z.is_empty():
            return None
        return self._normalize(z.up().intersect(inv))

    def post(self, z: DBM, k: int) -> DBM | None:
        e = self.ta.edges[k]
        zz = z.intersect(self.guards[k])
        if zz.is_empty():
            return None
        zz = zz.reset(self.resets[k]).intersect(self.inv[e.target])
        if zz.is_empty():
            return None
        return self._normalize(zz.up().intersect(self.inv[e.target]))

    def _add(self, loc: str, z: DBM | None, depth: int) -> int | None:
        if z is None:
            return None
        key = (loc, z.key())
        nid = self._ids.get(key)
        if nid is None:
            nid = len(self.nodes)
            self._ids[key] = nid
            self.nodes.append((loc, z))
            self.succ.append([])
            self.depth.append(depth)
        return nid

    def locations(self) -> set[str]:
        return {loc for loc, _ in self.nodes}

    def pre_reset(self, k: int) -> DBM:
        """Valuations whose reset by edge ``k`` lands in the target invariant."""
        e = self.ta.edges[k]
        reset = set(e.resets)
        kept = []
        for a in self.ta.invariants.get(e.target, ()):
            if a.clock in reset:
                if not _holds_at_zero(a):
                    empty = DBM.universe(self.n)
                    empty.d[0][0] = -1
                    return empty
            else:
                kept.append(a)
        return constraint_dbm(self.n, self.index, kept)

    def is_deadlocked(self, node: int) -> bool:
        """Some valuation of the node's zone can take no edge, even after delaying."""
        loc, z = self.nodes[node]
        rest = [z]
        for k in self.out[loc]:
            enabled = z.intersect(self.inv[loc]).intersect(self.guards[k]).intersect(self.pre_reset(k))
            if enabled.is_empty():
                continue
            past = enabled.down()
            rest = [piece for r in rest for piece in r.subtract(past)]
            if not rest:
                return False
        return bool(rest)


def _holds_at_zero(a: ConcreteAtom) -> bool:
    v, c = 0, a.value
    return {"<": v < c, "<=": v <= c, "=": v == c, ">=": v >= c, ">": v > c}[a.relation]


def reachable(ta: ConcreteTA, goals: Iterable[str]) -> bool:
    """Some run reaches a goal location."""
    goals = set(goals)
    g = ZoneGraph(ta, stop_at=goals)
    return bool(goals & g.locations())


def unavoidable(ta: ConcreteTA, goals: Iterable[str]) -> bool:
    """Every maximal run (counted in discrete steps) visits a goal location."""
    goals = set(goals)
    g = ZoneGraph(ta, stop_at=goals)
    if g.initial is None:
        return False
    bad = [i for i, (loc, _) in enumerate(g.nodes) if loc not in goals]
    if not bad:
        return True
    for i in bad:
        if g.is_deadlocked(i):
            return False
    # a cycle among non-goal nodes is an infinite run avoiding the goals
    indeg = {i: 0 for i in bad}
    for i in bad:
        for _, j in g.succ[i]:
            if j in indeg:
                indeg[j] += 1
    queue = deque(i for i, d in indeg.items() if d == 0)
    removed = 0
    while queue:
        i = queue.popleft()
        removed += 1
        for _, j in g.succ[i]:
            if j in indeg:
                indeg[j] -= 1
                if indeg[j] == 0:
                    queue.append(j)
    return removed == len(bad)


def _transitions(g: ZoneGraph) -> list[dict[tuple[str, str], set[int]]]:
    out = []
    for node in range(len(g.nodes)):
        moves: dict[tuple[str, str], set[int]] = {}
        for k, j in g.succ[node]:
            e = g.ta.edges[k]
            moves.setdefault((e.action, e.target), set()).add(j)
        out.append(moves)
    return out


def trace_equal(ta1: ConcreteTA, ta2: ConcreteTA) -> bool:
    """Equal sets of untimed traces (alternating locations and actions)."""
    if set(ta1.locations) != set(ta2.locations):
        raise ModelError("trace comparison needs the same locations on both sides")
    g1, g2 = ZoneGraph(ta1), ZoneGraph(ta2)
    if (g1.initial is None) != (g2.initial is None):
        return False
    if g1.initial is None:
        return True
    if ta1.initial != ta2.initial:
        return False
    t1, t2 = _transitions(g1), _transitions(g2)
    start = (frozenset([g1.initial]), frozenset([g2.initial]))
    seen = {start}
    queue = deque([start])
    while queue:
        s1, s2 = queue.popleft()
        m1: dict[tuple[str, str], set[int]] = {}
        for i in s1:
            for sym, js in t1[i].items():
                m1.setdefault(sym, set()).update(js)
        m2: dict[tuple[str, str], set[int]] = {}
        for i in s2:
            for sym, js in t2[i].items():
                m2.setdefault(sym, set()).update(js)
        if m1.keys() != m2.keys():
            return False
        for sym in m1:
            pair = (frozenset(m1[sym]), frozenset(m2[sym]))
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


def bounded_reachable(ta: ConcreteTA, goals: Iterable[str], depth: int) -> bool:
    """Reachability without extrapolation, exploring at most ``depth`` edges."""
    goals = set(goals)
    g = ZoneGraph(ta, extrapolate=False, max_depth=depth, stop_at=goals)
    return bool(goals & g.locations())
