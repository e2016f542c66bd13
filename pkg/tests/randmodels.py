"""Seeded generator of small bounded PTAs."""
from __future__ import annotations

import random

from polyparam.kernel.linear import LinearTerm
from polyparam.model import PTA, ClockAtom, Edge, ParamDomain, validate


def _bound(rng: random.Random, params) -> LinearTerm:
    kind = rng.randrange(4)
    if kind == 0 or not params:
        return LinearTerm.const(rng.randint(0, 3))
    p = LinearTerm.var(rng.choice(params))
    if kind == 1:
        return p
    if kind == 2:
        return p + rng.randint(1, 2)
    return p * 2


def random_pta(seed: int, max_locations: int = 3, max_clocks: int = 2,
               max_params: int = 2, max_bound: int = 3, closed: bool = False) -> PTA:
    """``closed`` draws only non-strict atoms."""
    rng = random.Random(seed)
    upper = ("<=",) if closed else ("<=", "<")
    any_rel = ("<=", ">=", "=") if closed else ("<=", "<", ">=", ">", "=")
    clocks = tuple(f"x{i}" for i in range(rng.randint(1, max_clocks)))
    params = tuple(f"p{i}" for i in range(rng.randint(1, max_params)))
    bounds = []
    for p in params:
        lo = rng.randint(0, 1)
        bounds.append((p, lo, rng.randint(lo, max_bound)))
    locs = tuple(f"l{i}" for i in range(rng.randint(2, max_locations)))
    invariants = {}
    for loc in locs:
        if rng.random() < 0.35:
            invariants[loc] = (ClockAtom(rng.choice(clocks), rng.choice(upper), _bound(rng, params)),)
    edges = []
    for _ in range(rng.randint(1, 4)):
        src, dst = rng.choice(locs), rng.choice(locs)
        guard = tuple(
            ClockAtom(rng.choice(clocks), rng.choice(any_rel), _bound(rng, params))
            for _ in range(rng.randint(0, 2))
        )
        resets = tuple(x for x in clocks if rng.random() < 0.5)
        edges.append(Edge(src, dst, rng.choice("ab"), guard, resets))
    pta = PTA(clocks, params, ParamDomain(tuple(bounds)), locs, locs[0], invariants, tuple(edges))
    validate(pta)
    return pta


def reachable_states(pta: PTA, depth: int = 3, limit: int = 12):
    """Symbolic states within ``depth`` edges of the initial one."""
    from polyparam.symbolic import Semantics

    sem = Semantics(pta)
    s0 = sem.initial_state()
    if s0 is None:
        return sem, []
    out, frontier = [s0], [s0]
    for _ in range(depth):
        frontier = [t for s in frontier for _, t in sem.successors(s)]
        out.extend(frontier)
        if len(out) >= limit:
            break
    return sem, out[:limit]
