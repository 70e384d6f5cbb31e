from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domorient.errors import PreconditionError
from domorient.graph import (
    INF,
    Orientation,
    UndirectedMultigraph,
    all_pairs_distances,
    blocks,
    bridges,
    directed_distance,
    is_bridgeless,
    is_connected,
    is_strong,
    orientation_diameter,
    strong_orientation,
    subdivide_edge,
)
from domorient.oracle import gen_random_bridgeless
from domorient.shapes import CLAIM3_SHAPES, role_isomorphic

from helpers import build_graph, directed


def brute_bridges(g):
    out = set()
    for eid in g.edges():
        h = g.copy()
        h.remove_edge(eid)
        if not is_connected(h):
            out.add(eid)
    return out


def test_bridges_k4():
    g = build_graph(4, [(a, b) for a, b in combinations(range(4), 2)])
    assert bridges(g) == set()


def test_bridges_path():
    g = build_graph(3, [(0, 1), (1, 2)])
    assert bridges(g) == set(g.edges())


def test_bridges_two_triangles_shared_vertex(two_triangles_shared_vertex):
    g = two_triangles_shared_vertex
    assert bridges(g) == brute_bridges(g) == set()


def test_bridges_parallel_edges_never_bridge():
    g = UndirectedMultigraph()
    g.add_vertex()
    g.add_vertex()
    g.add_edge(0, 1)
    g.add_edge(0, 1)
    assert bridges(g) == set()


def test_bridges_requires_connected():
    g = build_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(PreconditionError):
        bridges(g)


def test_bridges_matches_brute_force_on_random_graphs():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randrange(3, 9)
        g = UndirectedMultigraph()
        for _ in range(n):
            g.add_vertex()
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        for u, v in pairs[: n + rng.randrange(0, n)]:
            g.add_edge(u, v)
        if not is_connected(g):
            continue
        assert bridges(g) == brute_bridges(g)


def brute_blocks(g):
    """2-connectivity oracle: maximal vertex sets where every edge pair is
    on a common cycle; derived by grouping edges that stay connected after
    removing any single vertex."""
    # two edges are in one block iff no single vertex separates them
    eids = g.edges()
    parent = {e: e for e in eids}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for e1, e2 in combinations(eids, 2):
        a, b = g.endpoints(e1)
        c, d = g.endpoints(e2)
        together = True
        for cut in g.vertices():
            h = g.copy()
            live = [e for e in (e1, e2)]
            if cut in (a, b) and cut in (c, d):
                continue
            h.remove_vertex(cut)
            if not all(h.has_edge_id(e) for e in live):
                if cut not in (a, b, c, d):
                    continue
                together = False
                break
            # connectivity between the two edges in h
            seen = set()
            start = next(x for x in (a, b) if x != cut)
            stack = [start]
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(w for w in h.neighbors(x))
            if not any(x in seen for x in (c, d) if x != cut):
                together = False
                break
        if together:
            parent[find(e1)] = find(e2)
    groups = {}
    for e in eids:
        groups.setdefault(find(e), set()).update(g.endpoints(e))
    return sorted(map(frozenset, groups.values()), key=sorted)


def test_blocks_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    assert blocks(g) == [frozenset({0, 1, 2})]


def test_blocks_two_triangles(two_triangles_shared_vertex):
    got = sorted(blocks(two_triangles_shared_vertex), key=sorted)
    assert got == [frozenset({0, 1, 2}), frozenset({2, 3, 4})]
    assert got[0] & got[1] == {2}


def test_blocks_claim3_hamiltonian_path_shape():
    shape = next(s for s in CLAIM3_SHAPES if s.name == "r3_hp_7_3")
    g = shape.build()
    got = sorted(blocks(g), key=sorted)
    assert got == brute_blocks(g)
    assert got == [frozenset(range(9))]


def test_blocks_pairwise_share_at_most_one_vertex():
    for seed in range(25):
        g = gen_random_bridgeless(6 + seed % 4, seed % 3, seed)
        blks = blocks(g)
        for b1, b2 in combinations(blks, 2):
            assert len(b1 & b2) <= 1


def test_directed_distance_triangle():
    o = directed(3, [(0, 1), (1, 2), (2, 0)])
    assert directed_distance(o, 0, 1) == 1
    assert directed_distance(o, 1, 0) == 2


def test_directed_distance_six_cycle_antipodal():
    o = directed(6, [(i, (i + 1) % 6) for i in range(6)])
    assert directed_distance(o, 0, 3) == 3
    assert directed_distance(o, 3, 0) == 3


def test_directed_distance_unknown_vertex():
    o = directed(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(PreconditionError):
        directed_distance(o, 0, 99)


def test_directed_distance_unreachable():
    g = build_graph(2, [(0, 1)])
    o = Orientation(g, {0: (0, 1)})
    assert directed_distance(o, 1, 0) == INF


def test_is_strong_cycle_and_path():
    assert is_strong(directed(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    g = build_graph(3, [(0, 1), (1, 2)])
    for d0 in ((0, 1), (1, 0)):
        for d1 in ((1, 2), (2, 1)):
            assert not is_strong(Orientation(g, {0: d0, 1: d1}))


def test_is_strong_agrees_with_distances_small():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randrange(2, 8)
        g = UndirectedMultigraph()
        for _ in range(n):
            g.add_vertex()
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        direction = {}
        for u, v in pairs[: rng.randrange(1, len(pairs) + 1)]:
            e = g.add_edge(u, v)
            direction[e] = (u, v) if rng.random() < 0.5 else (v, u)
        o = Orientation(g, direction)
        dist = all_pairs_distances(o)
        finite = all(v in dist[u] for u in g.vertices() for v in g.vertices())
        assert is_strong(o) == finite


def test_subdivide_triangle_edge_twice_gives_five_cycle():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    created = subdivide_edge(g, 0, 2)
    assert len(created) == 2
    assert g.num_vertices() == 5 and g.num_edges() == 5
    assert bridges(g) == set()


def test_subdivide_parallel_edge_addresses_one_copy():
    g = UndirectedMultigraph()
    g.add_vertex()
    g.add_vertex()
    e1 = g.add_edge(0, 1)
    e2 = g.add_edge(0, 1)
    subdivide_edge(g, e1, 1)
    assert g.has_edge_id(e2)
    assert not g.has_edge_id(e1)
    assert g.num_vertices() == 3


def test_subdivide_missing_edge():
    g = build_graph(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(PreconditionError):
        subdivide_edge(g, 99, 1)


def test_subdivide_then_contract_restores_shape():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    reference = g.copy()
    created = subdivide_edge(g, 4, 2)
    # contract the created path back: replace path 0-a-b-2 by an edge
    a, b = created
    g.remove_vertex(a)
    g.remove_vertex(b)
    g.add_edge(0, 2)
    assert role_isomorphic(g, set(), reference, set())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_bridgeless_iff_no_bridges_iff_every_edge_on_cycle(seed):
    rng = random.Random(seed)
    n = rng.randrange(3, 9)
    g = UndirectedMultigraph()
    for _ in range(n):
        g.add_vertex()
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs[: n + rng.randrange(0, n)]:
        g.add_edge(u, v)
    if not is_connected(g):
        return
    br = bridges(g)
    assert (not br) == is_bridgeless(g)
    # an edge is on a cycle iff its removal keeps its endpoints connected
    for eid in g.edges():
        u, v = g.endpoints(eid)
        h = g.copy()
        h.remove_edge(eid)
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for w in h.neighbors(x):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        assert (v in seen) == (eid not in br)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_triangle_inequality_of_directed_distances(seed):
    rng = random.Random(seed)
    g = gen_random_bridgeless(rng.randrange(3, 9), rng.randrange(0, 4), seed)
    o = strong_orientation(g, rng)
    dist = all_pairs_distances(o)
    verts = g.vertices()
    for u in verts:
        for v in verts:
            for w in verts:
                assert dist[u][w] <= dist[u][v] + dist[v][w]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_strong_orientation_is_strong_and_deterministic(seed):
    g = gen_random_bridgeless(3 + seed % 8, seed % 5, seed)
    o1 = strong_orientation(g)
    o2 = strong_orientation(g)
    assert o1.direction == o2.direction
    assert is_strong(o1)
    assert orientation_diameter(o1) <= g.num_vertices() - 1 + g.num_edges()
