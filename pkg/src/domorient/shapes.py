"""Canonical small-graph shapes used by the orientation machinery.

All shapes are stored as integer-labelled templates: an edge list plus the
set of dominating labels.

Derivation notes (the shapes are validated by exhaustive checks in the
test suite rather than taken on faith):

* ``h01``: the edge-minimal two-dominator building block that is a plain
  6-cycle with the two dominators antipodal.
* ``h02``: the only other edge-minimal two-dominator block: a triangle and
  a 4-cycle sharing one dominated cut vertex (7 edges). Each dominator has
  degree 2 and the shared vertex has degree 4.
* merged shapes: unions of two such blocks that share exactly one
  dominator spoke. Gluing a block at the h02 cut vertex always embeds a
  three-dominator block in the union, so only three attachment types can
  occur: the 6-cycle (A), the h02 triangle end (B), and the h02 4-cycle
  end (C). The six unordered combinations are exactly the realizable
  merged shapes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import Role, UndirectedMultigraph


@dataclass(frozen=True)
class Shape:
    name: str
    n: int
    edges: tuple[tuple[int, int], ...]
    dominators: frozenset[int]

    def build(self) -> UndirectedMultigraph:
        g = UndirectedMultigraph()
        for v in range(self.n):
            g.add_vertex(Role.DOMINATING if v in self.dominators else Role.DOMINATED, vid=v)
        for u, v in self.edges:
            g.add_edge(u, v)
        return g


H01 = Shape("h01", 6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)), frozenset({0, 3}))

# triangle (0,1,2) with cut vertex 1; 4-cycle (1,4,3,5)
H02 = Shape(
    "h02",
    6,
    ((0, 1), (0, 2), (1, 2), (1, 4), (3, 4), (3, 5), (1, 5)),
    frozenset({0, 3}),
)


def _attach(kind: str, next_label: int):
    """Edges and dominator of one block hanging off the shared spoke (0,1).

    Vertex 0 is the shared dominator, vertex 1 the shared dominated
    vertex; the block's remaining four vertices take consecutive labels.
    """
    p, q, r, s = range(next_label, next_label + 4)
    if kind == "A":  # 6-cycle 0-1-p-q-r-s-0
        return [(1, p), (p, q), (q, r), (r, s), (s, 0)], q
    if kind == "B":  # triangle (0, p, 1) with cut vertex p; 4-cycle (p, r, q, s)
        return [(0, p), (p, 1), (p, r), (q, r), (q, s), (s, p)], q
    if kind == "C":  # triangle (q, r, s); 4-cycle (r, 1, 0, p) with cut vertex r
        return [(q, r), (q, s), (r, s), (r, 1), (0, p), (p, r)], q
    if kind == "B1":  # triangle (0, 1, p) glued at the h02 cut vertex 1
        return [(0, p), (p, 1), (1, r), (q, r), (q, s), (s, 1)], q
    raise ValueError(kind)


def merged_shape(kind1: str, kind2: str) -> Shape:
    edges: list[tuple[int, int]] = [(0, 1)]
    e1, d1 = _attach(kind1, 2)
    e2, d2 = _attach(kind2, 6)
    edges.extend(e1)
    edges.extend(e2)
    return Shape(f"merged_{kind1}{kind2}", 10, tuple(edges), frozenset({0, d1, d2}))


MERGED_KINDS = (("A", "A"), ("A", "B"), ("A", "C"), ("B", "B"), ("B", "C"), ("C", "C"))
MERGED_SHAPES = tuple(merged_shape(a, b) for a, b in MERGED_KINDS)


def _path(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def _claim3(name: str, n: int, extra: list[tuple[int, int]], doms: set[int]) -> Shape:
    return Shape(name, n, tuple(_path(n) + extra), frozenset(doms))


# Families of edge-minimal alternative subgraphs that contain a
# Hamiltonian path between two dominators; the orientation search must
# reach a splice cost of at most 3s - 2 on each of them.
CLAIM3_SHAPES = (
    _claim3("r3_hp_7_3", 9, [(0, 6), (2, 8)], {0, 4, 8}),
    _claim3("r4_hp_10_3", 12, [(0, 9), (2, 11)], {0, 4, 7, 11}),
    _claim3("r4_hp_7_3", 12, [(0, 6), (2, 11)], {0, 4, 8, 11}),
    # two cycle-blocks separated by cut vertices
    _claim3("r3_blocks_3_7", 9, [(0, 2), (6, 8), (2, 6)], {0, 4, 8}),
    _claim3("r4_blocks_3_10", 12, [(0, 2), (9, 11), (2, 9)], {0, 4, 7, 11}),
    _claim3("r4_blocks_3_7", 12, [(0, 2), (6, 11), (2, 6)], {0, 4, 8, 11}),
    # single cut vertex variants
    _claim3("r4_cut_3_7_s10", 12, [(0, 2), (6, 11), (2, 9)], {0, 4, 8, 11}),
    _claim3("r4_cut_3_7_s11", 12, [(0, 2), (6, 11), (2, 10)], {0, 4, 8, 11}),
    _claim3("r4_cut_3_7_s6_t10", 12, [(0, 2), (6, 11), (2, 5), (3, 9)], {0, 4, 8, 11}),
    _claim3("r4_cut_3_7_s6_t11", 12, [(0, 2), (6, 11), (2, 5), (3, 10)], {0, 4, 8, 11}),
)


# -- role-respecting isomorphism ---------------------------------------


def _signature(g: UndirectedMultigraph, doms, v: int):
    nbr = sorted((g.degree(w), w in doms, len(g.edge_ids_between(v, w))) for w in g.neighbors(v))
    return (g.degree(v), v in doms, tuple(nbr))


def role_isomorphic(g1: UndirectedMultigraph, doms1, g2: UndirectedMultigraph, doms2) -> bool:
    """Isomorphism test that must map dominators to dominators.

    Backtracking with degree/role/neighborhood signatures; intended for
    the small template shapes only.
    """
    doms1, doms2 = set(doms1), set(doms2)
    if g1.num_vertices() != g2.num_vertices() or g1.num_edges() != g2.num_edges():
        return False
    if len(doms1) != len(doms2):
        return False
    sig1 = {v: _signature(g1, doms1, v) for v in g1.vertices()}
    sig2 = {v: _signature(g2, doms2, v) for v in g2.vertices()}
    if sorted(sig1.values()) != sorted(sig2.values()):
        return False
    order = sorted(g1.vertices(), key=lambda v: (sig1[v], v))
    candidates = {v: [w for w in g2.vertices() if sig2[w] == sig1[v]] for v in order}

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u in mapping:
                if len(g1.edge_ids_between(v, u)) != len(g2.edge_ids_between(w, mapping[u])):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if place(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return place(0)


def match_merged_shape(g: UndirectedMultigraph, doms) -> Shape | None:
    for shape in MERGED_SHAPES:
        if role_isomorphic(g, doms, shape.build(), shape.dominators):
            return shape
    return None


def induced_subgraph(g: UndirectedMultigraph, vset, eset=None) -> UndirectedMultigraph:
    """Standalone copy of the subgraph on vset (optionally a given edge set)."""
    sub = UndirectedMultigraph()
    for v in sorted(vset):
        sub.add_vertex(g.role(v), vid=v)
    for eid, u, v in g.edge_tuples():
        if u in vset and v in vset and (eset is None or eid in eset):
            sub.add_edge(u, v, eid=eid)
    return sub


def all_pairs_shapes() -> list[tuple[str, str]]:
    """Every unordered attachment pair including the impossible cut-vertex
    gluing, for the derivation test."""
    kinds = ["A", "B", "B1", "C"]
    return [(a, b) for a, b in combinations(kinds, 2)] + [(k, k) for k in kinds]
