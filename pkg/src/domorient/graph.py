"""Undirected multigraph and orientation primitives.

Vertices and edges are opaque integer handles. Handles are never reused
within one graph lifetime (copies continue the same counters). Parallel
edges are first class: each copy has its own edge id and can be addressed
individually. Self-loops are rejected at creation because they never
affect distances or strongness.

Graphs are mutable while being built and treated as immutable once they
enter the pipeline; all iteration orders are sorted so results are
reproducible.
"""

from __future__ import annotations

import random
from collections import deque
from enum import Enum

from .errors import PreconditionError


class Role(Enum):
    DOMINATING = "dominating"
    DOMINATED = "dominated"
    AUXILIARY = "auxiliary"


class UndirectedMultigraph:
    def __init__(self):
        self._adj: dict[int, dict[int, set[int]]] = {}
        self._edges: dict[int, tuple[int, int]] = {}
        self._roles: dict[int, Role] = {}
        self._next_vertex = 0
        self._next_edge = 0

    # -- construction -------------------------------------------------

    def add_vertex(self, role: Role = Role.DOMINATED, vid: int | None = None) -> int:
        if vid is None:
            vid = self._next_vertex
        if vid in self._adj:
            raise ValueError(f"vertex {vid} already present")
        self._next_vertex = max(self._next_vertex, vid + 1)
        self._adj[vid] = {}
        self._roles[vid] = role
        return vid

    def add_edge(self, u: int, v: int, eid: int | None = None) -> int:
        if u == v:
            raise ValueError("self-loops are not stored")
        if u not in self._adj or v not in self._adj:
            raise PreconditionError(f"unknown endpoint in ({u}, {v})")
        if eid is None:
            eid = self._next_edge
        if eid in self._edges:
            raise ValueError(f"edge {eid} already present")
        self._next_edge = max(self._next_edge, eid + 1)
        self._edges[eid] = (u, v)
        self._adj[u].setdefault(v, set()).add(eid)
        self._adj[v].setdefault(u, set()).add(eid)
        return eid

    def remove_edge(self, eid: int) -> None:
        u, v = self._edges.pop(eid)
        self._adj[u][v].discard(eid)
        if not self._adj[u][v]:
            del self._adj[u][v]
        self._adj[v][u].discard(eid)
        if not self._adj[v][u]:
            del self._adj[v][u]

    def remove_vertex(self, v: int) -> None:
        for eid in list(self.incident_edges(v)):
            self.remove_edge(eid)
        del self._adj[v]
        del self._roles[v]

    def copy(self) -> "UndirectedMultigraph":
        g = UndirectedMultigraph()
        g._adj = {v: {w: set(eids) for w, eids in nbrs.items()} for v, nbrs in self._adj.items()}
        g._edges = dict(self._edges)
        g._roles = dict(self._roles)
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    # -- queries ------------------------------------------------------

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[int]:
        return sorted(self._edges)

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge_id(self, eid: int) -> bool:
        return eid in self._edges

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid]

    def role(self, v: int) -> Role:
        return self._roles[v]

    def set_role(self, v: int, role: Role) -> None:
        self._roles[v] = role

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def incident_edges(self, v: int) -> list[int]:
        out: list[int] = []
        for eids in self._adj[v].values():
            out.extend(eids)
        return sorted(out)

    def degree(self, v: int) -> int:
        return sum(len(eids) for eids in self._adj[v].values())

    def edge_ids_between(self, u: int, v: int) -> list[int]:
        return sorted(self._adj[u].get(v, ()))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_tuples(self) -> list[tuple[int, int, int]]:
        """(eid, u, v) triples sorted by edge id."""
        return [(eid, *self._edges[eid]) for eid in sorted(self._edges)]

    def other_endpoint(self, eid: int, v: int) -> int:
        u, w = self._edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} not on edge {eid}")


# -- connectivity -----------------------------------------------------


def is_connected(g: UndirectedMultigraph) -> bool:
    verts = g.vertices()
    if not verts:
        return True
    seen = {verts[0]}
    queue = deque([verts[0]])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(verts)


def bridges(g: UndirectedMultigraph) -> set[int]:
    """Edge ids whose removal disconnects g.

    Iterative low-link DFS. The edge used to enter a vertex is exempted by
    edge id, so a parallel copy still counts as a back edge and parallel
    edges are never reported as bridges.
    """
    if not is_connected(g):
        raise PreconditionError("not connected")
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    result: set[int] = set()
    counter = 0
    for root in g.vertices():
        if root in disc:
            continue
        stack: list[tuple[int, int, list[tuple[int, int]], int]] = []
        disc[root] = low[root] = counter
        counter += 1
        stack.append((root, -1, self_edges(g, root), 0))
        while stack:
            v, in_eid, out, idx = stack.pop()
            if idx < len(out):
                stack.append((v, in_eid, out, idx + 1))
                eid, w = out[idx]
                if eid == in_eid:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, self_edges(g, w), 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                if in_eid >= 0:
                    u = g.other_endpoint(in_eid, v)
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        result.add(in_eid)
    return result


def self_edges(g: UndirectedMultigraph, v: int) -> list[tuple[int, int]]:
    """Sorted (eid, other endpoint) pairs incident to v."""
    return [(eid, g.other_endpoint(eid, v)) for eid in g.incident_edges(v)]


def is_bridgeless(g: UndirectedMultigraph) -> bool:
    return is_connected(g) and not bridges(g)


def blocks(g: UndirectedMultigraph) -> list[frozenset[int]]:
    """Block decomposition: vertex set of each maximal 2-connected piece.

    A lone bridge edge forms its own block. Blocks pairwise intersect in at
    most one vertex (a cut vertex).
    """
    if not is_connected(g):
        raise PreconditionError("not connected")
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    edge_stack: list[int] = []
    result: list[frozenset[int]] = []
    counter = 0
    for root in g.vertices():
        if root in disc:
            continue
        if g.degree(root) == 0:
            result.append(frozenset([root]))
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, self_edges(g, root), 0)]
        while stack:
            v, in_eid, out, idx = stack.pop()
            if idx < len(out):
                stack.append((v, in_eid, out, idx + 1))
                eid, w = out[idx]
                if eid == in_eid:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(eid)
                    stack.append((w, eid, self_edges(g, w), 0))
                elif disc[w] < disc[v]:
                    edge_stack.append(eid)
                    low[v] = min(low[v], disc[w])
            else:
                if in_eid >= 0:
                    u = g.other_endpoint(in_eid, v)
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        comp: set[int] = set()
                        while True:
                            eid = edge_stack.pop()
                            a, b = g.endpoints(eid)
                            comp.update((a, b))
                            if eid == in_eid:
                                break
                        result.append(frozenset(comp))
    return result


def cut_vertices(g: UndirectedMultigraph) -> set[int]:
    seen: dict[int, int] = {}
    for blk in blocks(g):
        for v in blk:
            seen[v] = seen.get(v, 0) + 1
    return {v for v, k in seen.items() if k > 1}


# -- orientations -----------------------------------------------------


class Orientation:
    """Direction assignment over every edge of a base multigraph."""

    def __init__(self, base: UndirectedMultigraph, direction: dict[int, tuple[int, int]]):
        if set(direction) != set(base.edges()):
            raise PreconditionError("direction map must cover exactly the base edges")
        for eid, (t, h) in direction.items():
            u, v = base.endpoints(eid)
            if {t, h} != {u, v}:
                raise PreconditionError(f"arc {t}->{h} does not match edge {eid}")
        self.base = base
        self.direction = dict(direction)
        self._out: dict[int, list[int]] | None = None
        self._in: dict[int, list[int]] | None = None

    def _build(self) -> None:
        out: dict[int, set[int]] = {v: set() for v in self.base.vertices()}
        inc: dict[int, set[int]] = {v: set() for v in self.base.vertices()}
        for t, h in self.direction.values():
            out[t].add(h)
            inc[h].add(t)
        self._out = {v: sorted(ws) for v, ws in out.items()}
        self._in = {v: sorted(ws) for v, ws in inc.items()}

    def out_neighbors(self, v: int) -> list[int]:
        if self._out is None:
            self._build()
        return self._out[v]

    def in_neighbors(self, v: int) -> list[int]:
        if self._in is None:
            self._build()
        return self._in[v]

    def arcs(self) -> list[tuple[int, int, int]]:
        """(eid, tail, head) sorted by edge id."""
        return [(eid, *self.direction[eid]) for eid in sorted(self.direction)]

    def reversed(self) -> "Orientation":
        return Orientation(self.base, {e: (h, t) for e, (t, h) in self.direction.items()})


INF = float("inf")


def distances_from(o: Orientation, u: int):
    if not o.base.has_vertex(u):
        raise PreconditionError(f"unknown vertex {u}")
    dist = {u: 0}
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in o.out_neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def directed_distance(o: Orientation, u: int, v: int):
    """Length of a shortest directed path, or infinity when unreachable."""
    if not o.base.has_vertex(u) or not o.base.has_vertex(v):
        raise PreconditionError("unknown vertex id")
    return distances_from(o, u).get(v, INF)


def all_pairs_distances(o: Orientation) -> dict[int, dict[int, int]]:
    return {u: distances_from(o, u) for u in o.base.vertices()}


def is_strong(o: Orientation) -> bool:
    verts = o.base.vertices()
    if len(verts) <= 1:
        return True
    s = verts[0]
    if len(distances_from(o, s)) != len(verts):
        return False
    # reverse reachability
    dist = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in o.in_neighbors(v):
            if w not in dist:
                dist.add(w)
                queue.append(w)
    return len(dist) == len(verts)


def orientation_diameter(o: Orientation) -> int:
    """Max directed distance over ordered pairs; requires a strong input."""
    best = 0
    n = o.base.num_vertices()
    for u in o.base.vertices():
        d = distances_from(o, u)
        if len(d) != n:
            raise PreconditionError("orientation is not strong")
        best = max(best, max(d.values()))
    return best


def max_round_trip(o: Orientation) -> int:
    """Max over pairs of d(u,v) + d(v,u); upper bound on every strong distance."""
    dist = all_pairs_distances(o)
    verts = o.base.vertices()
    best = 0
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            best = max(best, dist[u][v] + dist[v][u])
    return best


# -- mutation helpers --------------------------------------------------


def subdivide_edge(g: UndirectedMultigraph, eid: int, k: int) -> list[int]:
    """Replace one edge by a path through k fresh AUXILIARY vertices."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if not g.has_edge_id(eid):
        raise PreconditionError(f"missing edge id {eid}")
    u, v = g.endpoints(eid)
    g.remove_edge(eid)
    created = [g.add_vertex(Role.AUXILIARY) for _ in range(k)]
    chain = [u, *created, v]
    for a, b in zip(chain, chain[1:]):
        g.add_edge(a, b)
    return created


def strong_orientation(g: UndirectedMultigraph, rng: random.Random | None = None) -> Orientation:
    """Strong orientation of a bridgeless connected graph.

    Ear construction: orient one cycle, then repeatedly orient an ear (a
    path over unoriented edges between already-oriented vertices) as a
    directed path. With rng=None every choice takes the smallest id, so the
    result is deterministic; otherwise choices are drawn from rng.
    """
    if g.num_vertices() == 0:
        return Orientation(g, {})
    if not is_bridgeless(g):
        raise PreconditionError("not bridgeless")

    def pick(options):
        if rng is None:
            return options[0]
        return options[rng.randrange(len(options))]

    direction: dict[int, tuple[int, int]] = {}
    # initial cycle: first non-tree edge of a traversal closes one through
    # the lowest common ancestor of its endpoints
    start = pick(g.vertices())
    parent_edge: dict[int, int] = {start: -1}
    stack = [start]
    closing = None
    while stack and closing is None:
        v = stack.pop()
        for eid, w in self_edges(g, v):
            if eid == parent_edge.get(v):
                continue
            if w in parent_edge:
                closing = (eid, v, w)
                break
            parent_edge[w] = eid
            stack.append(w)
    assert closing is not None

    def up_chain(x):
        chain_v, chain_e = [x], []
        while parent_edge[x] != -1:
            e = parent_edge[x]
            chain_e.append(e)
            x = g.other_endpoint(e, x)
            chain_v.append(x)
        return chain_v, chain_e

    eid0, v, w = closing
    vv, ve = up_chain(v)
    wv, we = up_chain(w)
    in_v = {x: i for i, x in enumerate(vv)}
    j = next(i for i, x in enumerate(wv) if x in in_v)
    lca = wv[j]
    i = in_v[lca]
    # closed walk: lca -> v (down), edge (v, w), w -> lca (up)
    cycle_edges = list(reversed(ve[:i])) + [eid0] + we[:j]
    cur = lca
    for eid in cycle_edges:
        nxt = g.other_endpoint(eid, cur)
        direction[eid] = (cur, nxt)
        cur = nxt
    assert cur == lca
    spanned = {g.endpoints(eid)[0] for eid in cycle_edges}
    spanned |= {g.endpoints(eid)[1] for eid in cycle_edges}

    while len(direction) < g.num_edges():
        # ear root: an unoriented edge leaving the spanned set
        candidates = []
        for v in sorted(spanned):
            for eid, w in self_edges(g, v):
                if eid not in direction:
                    candidates.append((v, eid, w))
        root_v, root_eid, first = pick(candidates)
        if first in spanned:
            direction[root_eid] = (root_v, first)
            continue
        # BFS from `first` over unoriented edges (not reusing the root edge)
        prev: dict[int, tuple[int, int]] = {first: (root_v, root_eid)}
        queue = deque([first])
        hit = None
        while queue and hit is None:
            v = queue.popleft()
            for eid, w in self_edges(g, v):
                if eid in direction or eid == prev[v][1]:
                    continue
                if w in spanned:
                    hit = (w, eid, v)
                    break
                if w not in prev:
                    prev[w] = (v, eid)
                    queue.append(w)
        assert hit is not None, "bridgeless graph must close every ear"
        end, last_eid, before = hit
        # orient along the ear root_v -> ... -> end
        path_edges = [last_eid]
        x = before
        while x != root_v:
            p, eid = prev[x]
            path_edges.append(eid)
            x = p
        cur = root_v
        for eid in reversed(path_edges):
            nxt = g.other_endpoint(eid, cur)
            direction[eid] = (cur, nxt)
            spanned.add(cur)
            cur = nxt
        spanned.add(cur)

    o = Orientation(g, direction)
    assert is_strong(o)
    return o
