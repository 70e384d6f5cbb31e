"""Ground truth and instance generators.

Exact minimum oriented diameter / strong diameter by branch and bound over
all edge orientations, a deliberately dumb unpruned enumerator to check the
pruned solver against, the extremal chain family, seeded random bridgeless
graphs, and the 2-connected probe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .domination import DominatingSet, minimum_dominating_set
from .errors import BudgetExceededError, PreconditionError
from .graph import (
    Orientation,
    Role,
    UndirectedMultigraph,
    all_pairs_distances,
    blocks,
    is_bridgeless,
    is_strong,
    orientation_diameter,
)
from .metrics import strong_distance

DIAM_EDGE_BUDGET = 28
SDIAM_EDGE_BUDGET = 22


@dataclass
class ExactResult:
    optimum: int
    witness: Orientation
    explored: int
    pruned: int


def _objective_value(o: Orientation, objective: str, cutoff: int | None = None) -> int:
    if objective == "diam":
        return orientation_diameter(o)
    if objective != "sdiam":
        raise PreconditionError(f"unknown objective {objective!r}")
    verts = o.base.vertices()
    best = 0
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            best = max(best, strong_distance(o, u, v, "exact"))
            if cutoff is not None and best >= cutoff:
                return best
    return best


def _search(g: UndirectedMultigraph, objective: str, budget: int) -> ExactResult:
    if not is_bridgeless(g):
        raise PreconditionError("not bridgeless")
    m = g.num_edges()
    if m > budget:
        raise BudgetExceededError(f"{m} edges over the budget of {budget}; shrink the instance")
    eids = g.edges()
    endpoints = [g.endpoints(e) for e in eids]
    verts = g.vertices()
    remaining = {v: g.degree(v) for v in verts}
    out_deg = {v: 0 for v in verts}
    in_deg = {v: 0 for v in verts}
    best_value = None
    best_dir: dict[int, tuple[int, int]] | None = None
    explored = 0
    pruned = 0
    direction: dict[int, tuple[int, int]] = {}
    lb_depth = max(2, m // 2)

    def mixed_diameter_lb() -> int:
        # distances where unassigned edges count both ways never exceed the
        # distances of any completion
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for i, e in enumerate(eids):
            u, v = endpoints[i]
            if e in direction:
                t, h = direction[e]
                adj[t].add(h)
            else:
                adj[u].add(v)
                adj[v].add(u)
        worst = 0
        for s in verts:
            dist = {s: 0}
            layer = [s]
            while layer:
                nxt = []
                for x in layer:
                    for y in adj[x]:
                        if y not in dist:
                            dist[y] = dist[x] + 1
                            nxt.append(y)
                layer = nxt
            if len(dist) < len(verts):
                return len(verts) * 2  # some vertex already unreachable
            worst = max(worst, max(dist.values()))
        return worst

    def assign(idx: int) -> None:
        nonlocal best_value, best_dir, explored, pruned
        if idx == m:
            explored += 1
            o = Orientation(g, dict(direction))
            if not is_strong(o):
                return
            value = _objective_value(o, objective, cutoff=best_value)
            if best_value is None or value < best_value:
                best_value = value
                best_dir = dict(direction)
            return
        if idx == lb_depth and best_value is not None:
            if mixed_diameter_lb() >= best_value:
                pruned += 1
                return
        e = eids[idx]
        u, v = endpoints[idx]
        choices = [(u, v)] if idx == 0 else [(u, v), (v, u)]
        for t, h in choices:
            direction[e] = (t, h)
            out_deg[t] += 1
            in_deg[h] += 1
            remaining[u] -= 1
            remaining[v] -= 1
            dead = False
            for x in (u, v):
                if remaining[x] == 0 and (out_deg[x] == 0 or in_deg[x] == 0):
                    dead = True
            if dead:
                pruned += 1
            else:
                assign(idx + 1)
            del direction[e]
            out_deg[t] -= 1
            in_deg[h] -= 1
            remaining[u] += 1
            remaining[v] += 1

    assign(0)
    assert best_dir is not None, "bridgeless graphs always admit a strong orientation"
    return ExactResult(best_value, Orientation(g, best_dir), explored, pruned)


def exact_oriented_diameter(g: UndirectedMultigraph, budget: int = DIAM_EDGE_BUDGET) -> ExactResult:
    return _search(g, "diam", budget)


def exact_oriented_strong_diameter(g: UndirectedMultigraph, budget: int = SDIAM_EDGE_BUDGET) -> ExactResult:
    return _search(g, "sdiam", budget)


def exhaustive_oriented_value(g: UndirectedMultigraph, objective: str) -> int:
    """Unpruned reference enumeration over all 2^m orientations."""
    m = g.num_edges()
    if m > 20:
        raise BudgetExceededError("unpruned enumeration limited to 20 edges")
    eids = g.edges()
    endpoints = [g.endpoints(e) for e in eids]
    best = None
    for mask in range(1 << m):
        direction = {}
        for i, e in enumerate(eids):
            u, v = endpoints[i]
            direction[e] = (u, v) if mask >> i & 1 else (v, u)
        o = Orientation(g, direction)
        if not is_strong(o):
            continue
        value = _objective_value(o, objective)
        if best is None or value < best:
            best = value
    if best is None:
        raise PreconditionError("no strong orientation exists")
    return best


# -- generators ---------------------------------------------------------


def gen_extremal(gamma: int, pattern=None):
    """Chain family meeting both bounds with equality.

    A path of `gamma` hub vertices; consecutive hubs are joined by a
    7-edge gadget (a triangle and a 4-cycle sharing a cut vertex) in one of
    two mirror arrangements chosen by `pattern`, and the two end hubs carry
    plain triangles. The hubs are a minimum dominating set.
    """
    if gamma < 1:
        raise PreconditionError("gamma must be >= 1")
    pattern = list(pattern) if pattern is not None else [1] * (gamma - 1)
    if len(pattern) != gamma - 1 or any(p not in (1, 2) for p in pattern):
        raise PreconditionError("pattern must have gamma-1 entries from {1, 2}")
    g = UndirectedMultigraph()
    hubs = [g.add_vertex(Role.DOMINATING) for _ in range(gamma)]
    for i, kind in enumerate(pattern):
        a, b = hubs[i], hubs[i + 1]
        tri_end, cyc_end = (a, b) if kind == 1 else (b, a)
        hub = g.add_vertex(Role.DOMINATED)
        mate = g.add_vertex(Role.DOMINATED)
        c = g.add_vertex(Role.DOMINATED)
        d = g.add_vertex(Role.DOMINATED)
        g.add_edge(tri_end, hub)
        g.add_edge(tri_end, mate)
        g.add_edge(hub, mate)
        g.add_edge(hub, c)
        g.add_edge(hub, d)
        g.add_edge(cyc_end, c)
        g.add_edge(cyc_end, d)
    ends = [hubs[0]] if gamma == 1 else [hubs[0], hubs[-1]]
    for v in ends:
        t1 = g.add_vertex(Role.DOMINATED)
        t2 = g.add_vertex(Role.DOMINATED)
        g.add_edge(v, t1)
        g.add_edge(t1, t2)
        g.add_edge(t2, v)
    return g, DominatingSet(frozenset(hubs), g, True)


def gen_random_bridgeless(n: int, extra_edges: int, seed: int) -> UndirectedMultigraph:
    """Random Hamiltonian cycle plus random chords; deterministic per seed."""
    if n < 3:
        raise PreconditionError("need at least three vertices")
    rng = random.Random(seed)
    g = UndirectedMultigraph()
    for _ in range(n):
        g.add_vertex(Role.DOMINATED)
    perm = g.vertices()
    rng.shuffle(perm)
    cycle_pairs = set()
    for a, b in zip(perm, perm[1:] + perm[:1]):
        g.add_edge(a, b)
        cycle_pairs.add(frozenset((a, b)))
    candidates = [
        (u, v)
        for i, u in enumerate(g.vertices())
        for v in g.vertices()[i + 1:]
        if frozenset((u, v)) not in cycle_pairs
    ]
    k = min(extra_edges, len(candidates))
    for u, v in sorted(rng.sample(candidates, k)):
        g.add_edge(u, v)
    assert is_bridgeless(g)
    return g


def is_two_connected(g: UndirectedMultigraph) -> bool:
    return g.num_vertices() >= 3 and len(blocks(g)) == 1


def probe_two_connected(count: int, n: int, seed: int) -> list[dict]:
    """Sample 2-connected graphs and compare both exact oracles against
    3*gamma - 1 and 3*gamma. Reports rows; any violation row is a
    counterexample candidate for the open question, not an error.
    """
    rng = random.Random(seed)
    rows: list[dict] = []
    attempts = 0
    while len(rows) < count and attempts < count * 50:
        attempts += 1
        g = gen_random_bridgeless(n, rng.randrange(1, max(2, n // 2 + 1)), rng.randrange(1 << 30))
        if not is_two_connected(g):
            continue
        d = minimum_dominating_set(g)
        gamma = len(d)
        diam = exact_oriented_diameter(g).optimum
        sdiam = exact_oriented_strong_diameter(g).optimum
        rows.append(
            {
                "n": n,
                "edges": g.num_edges(),
                "gamma": gamma,
                "oriented_diameter": diam,
                "oriented_strong_diameter": sdiam,
                "diam_bound_3g_minus_1": 3 * gamma - 1,
                "sdiam_bound_3g": 3 * gamma,
                "violates": diam > 3 * gamma - 1 or sdiam > 3 * gamma,
            }
        )
    return rows


def verify_oriented_file_strong(g: UndirectedMultigraph, direction: dict[int, tuple[int, int]]) -> bool:
    return is_strong(Orientation(g, direction))


def random_strong_orientation(g: UndirectedMultigraph, seed: int) -> Orientation:
    from .graph import strong_orientation

    return strong_orientation(g, random.Random(seed))


def distances(o: Orientation):
    return all_pairs_distances(o)
