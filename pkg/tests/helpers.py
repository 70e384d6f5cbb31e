from __future__ import annotations

from itertools import combinations

from domorient.graph import Orientation, Role, UndirectedMultigraph


def build_graph(n, edges, dominators=()):
    g = UndirectedMultigraph()
    for v in range(n):
        g.add_vertex(Role.DOMINATING if v in set(dominators) else Role.DOMINATED)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def directed(n, arcs):
    g = UndirectedMultigraph()
    for _ in range(n):
        g.add_vertex()
    direction = {}
    for t, h in arcs:
        direction[g.add_edge(t, h)] = (t, h)
    return Orientation(g, direction)


def bowtie_graph():
    return build_graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])


def brute_minimum_dominating_size(g):
    verts = g.vertices()
    for k in range(len(verts) + 1):
        for sub in combinations(verts, k):
            s = set(sub)
            if all(v in s or any(w in s for w in g.neighbors(v)) for v in verts):
                return k
    raise AssertionError("unreachable")
