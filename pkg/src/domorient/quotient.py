"""Contract a subgraph to one vertex, re-standardize by rule-driven
subdivision of the boundary edges, and splice orientations back together.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .domination import DominatingSet, StandardPair
from .errors import InvariantBreachError, PreconditionError
from .graph import Orientation, Role, UndirectedMultigraph, is_strong


@dataclass
class BoundaryRecord:
    """One original boundary edge and its image in the quotient.

    inside/outside are the original endpoints, subdivision_count the number
    of created degree-2 vertices, created the new vertex ids ordered from
    the outside endpoint toward the contracted vertex, and quotient_edges
    the new edge ids along that path (same order).
    """

    orig_eid: int
    inside: int
    outside: int
    subdivision_count: int
    created: tuple[int, ...]
    quotient_edges: tuple[int, ...]


@dataclass
class QuotientMap:
    contracted_vertex: int
    triangle: tuple[int, int]
    boundary: dict[int, BoundaryRecord] = field(default_factory=dict)

    def stub_lookup(self) -> dict[int, BoundaryRecord]:
        """Map each quotient edge id on a boundary path to its record."""
        out = {}
        for rec in self.boundary.values():
            for eid in rec.quotient_edges:
                out[eid] = rec
        return out


def subdivision_count(inside_is_dominator: bool, outside_is_dominator: bool) -> int:
    """Boundary subdivision rule: 0 when the inside endpoint dominates,
    1 when neither endpoint does, 2 when the outside endpoint dominates.
    """
    if inside_is_dominator:
        return 0
    return 2 if outside_is_dominator else 1


def contract_and_standardize(
    graph: UndirectedMultigraph,
    dominators: frozenset[int],
    h_sub: frozenset[int],
) -> tuple[UndirectedMultigraph, frozenset[int], QuotientMap]:
    """Core contraction: no domination-closure requirement.

    Contracts h_sub to a fresh dominating vertex, subdivides every
    boundary edge per the rule above, attaches a fresh triangle at the new
    vertex, and returns the new graph, new dominator set, and the map.
    Vertex and edge ids outside h_sub are preserved.
    """
    if not h_sub <= set(graph.vertices()):
        raise PreconditionError("h_sub contains unknown vertices")
    if not h_sub & dominators:
        raise PreconditionError("h_sub must contain a dominator")
    work = graph.copy()
    boundary_edges = []
    for eid, u, v in graph.edge_tuples():
        if u in h_sub and v in h_sub:
            work.remove_edge(eid)
        elif u in h_sub or v in h_sub:
            inside, outside = (u, v) if u in h_sub else (v, u)
            boundary_edges.append((eid, inside, outside))
            work.remove_edge(eid)
    for v in sorted(h_sub):
        work.remove_vertex(v)
    h = work.add_vertex(Role.DOMINATING)
    t1 = work.add_vertex(Role.AUXILIARY)
    t2 = work.add_vertex(Role.AUXILIARY)
    work.add_edge(h, t1)
    work.add_edge(t1, t2)
    work.add_edge(t2, h)
    qm = QuotientMap(contracted_vertex=h, triangle=(t1, t2))
    for eid, inside, outside in boundary_edges:
        k = subdivision_count(inside in dominators, outside in dominators)
        created = [work.add_vertex(Role.AUXILIARY) for _ in range(k)]
        chain = [outside, *created, h]
        new_edges = [work.add_edge(a, b) for a, b in zip(chain, chain[1:])]
        qm.boundary[eid] = BoundaryRecord(
            orig_eid=eid,
            inside=inside,
            outside=outside,
            subdivision_count=k,
            created=tuple(created),
            quotient_edges=tuple(new_edges),
        )
    new_doms = frozenset(dominators - h_sub) | {h}
    return work, new_doms, qm


def s_quotient(sp: StandardPair, h_sub) -> tuple[StandardPair, QuotientMap]:
    """Standardized quotient of a connected, domination-closed subgraph.

    Requires: the induced subgraph on h_sub is connected, h_sub contains a
    dominator, and every dominated vertex of h_sub has its dominator in
    h_sub. The output passes the standard-pair predicate.
    """
    g = sp.graph
    h_sub = frozenset(h_sub)
    doms = sp.dominators.members
    if not h_sub <= set(g.vertices()):
        raise PreconditionError("h_sub contains unknown vertices")
    if not h_sub & doms:
        raise PreconditionError("h_sub contains no dominator")
    if not _induced_connected(g, h_sub):
        raise PreconditionError("h_sub does not induce a connected subgraph")
    for v in sorted(h_sub - doms):
        if not any(w in doms and w in h_sub for w in g.neighbors(v)):
            raise PreconditionError(f"dominated vertex {v} has no dominator inside h_sub")
    work, new_doms, qm = contract_and_standardize(g, doms, h_sub)
    out = StandardPair(work, DominatingSet(new_doms, work, sp.dominators.exact))
    bad = out.violations()
    if bad:
        raise InvariantBreachError(f"quotient is not standard: {bad}")
    return out, qm


def _induced_connected(g: UndirectedMultigraph, vset: frozenset[int]) -> bool:
    if not vset:
        return False
    seen = set()
    stack = [next(iter(sorted(vset)))]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for w in g.neighbors(v) if w in vset and w not in seen)
    return seen == vset


def compose(
    sp: StandardPair,
    h_sub,
    oriented_h: Orientation,
    oriented_quotient: Orientation,
    qm: QuotientMap,
) -> Orientation:
    """Splice an orientation of the contracted-away subgraph into an
    orientation of the quotient, producing an orientation of sp's graph.

    Boundary edges take the forced uniform direction of their subdivided
    path; the quotient's attached triangle is dropped; interior edges not
    covered by oriented_h (the subgraph may be edge-minimal) are oriented
    small-endpoint to large, which can only shorten distances.
    """
    if not is_strong(oriented_h):
        raise PreconditionError("subgraph orientation is not strong")
    if not is_strong(oriented_quotient):
        raise PreconditionError("quotient orientation is not strong")
    g = sp.graph
    h_sub = frozenset(h_sub)
    h = qm.contracted_vertex
    direction: dict[int, tuple[int, int]] = {}
    for eid, u, v in g.edge_tuples():
        if u in h_sub and v in h_sub:
            if eid in oriented_h.direction:
                direction[eid] = oriented_h.direction[eid]
            else:
                direction[eid] = (min(u, v), max(u, v))
    for rec in qm.boundary.values():
        # walk the quotient path outside -> h and check it is uniform
        chain = [rec.outside, *rec.created, h]
        forward = all(
            oriented_quotient.direction[eid] == (a, b)
            for eid, a, b in zip(rec.quotient_edges, chain, chain[1:])
        )
        backward = all(
            oriented_quotient.direction[eid] == (b, a)
            for eid, a, b in zip(rec.quotient_edges, chain, chain[1:])
        )
        if forward == backward:
            raise InvariantBreachError(f"boundary path for edge {rec.orig_eid} not uniform")
        if forward:
            direction[rec.orig_eid] = (rec.outside, rec.inside)
        else:
            direction[rec.orig_eid] = (rec.inside, rec.outside)
    skip = set()
    for rec in qm.boundary.values():
        skip.update(rec.quotient_edges)
    tri = set(qm.triangle) | {h}
    for eid, t, hd in oriented_quotient.arcs():
        if eid in skip or t in tri or hd in tri:
            continue
        direction[eid] = (t, hd)
    out = Orientation(g, direction)
    if not is_strong(out):
        raise InvariantBreachError("composed orientation is not strong")
    _check_compose_bound(sp, h_sub, oriented_h, oriented_quotient, out)
    return out


def _check_compose_bound(sp, h_sub, oriented_h, oriented_quotient, composed) -> None:
    """Whenever the quotient orientation meets its own diameter bound, the
    splice must stay within that bound plus the subgraph's splice cost."""
    from .graph import orientation_diameter
    from .metrics import m_value

    r = len(sp.dominators)
    r_prime = len(sp.dominators.members & h_sub)
    quotient_bound = (7 * (r - r_prime + 1) + 2) // 2
    if orientation_diameter(oriented_quotient) > quotient_bound:
        return
    inner = DominatingSet(frozenset(sp.dominators.members & h_sub), oriented_h.base, True)
    cap = quotient_bound + m_value(oriented_h, inner)
    got = orientation_diameter(composed)
    if got > cap:
        raise InvariantBreachError(f"composed diameter {got} exceeds {cap}")


def sdiam_compose_bound(r: int, r0: int, oriented_h: Orientation) -> int:
    """Guaranteed round-trip bound for the composed orientation under the
    strong-diameter objective: 7(r - r0 + 1) - 1 plus the subgraph cost
    (its edge count up to r0 = 4, twice |V| - 1 beyond).
    """
    if r0 <= 1:
        raise PreconditionError("contraction requires at least two dominators")
    e = oriented_h.base.num_edges()
    cost = 2 * (3 * r0 - 1) if r0 >= 5 else e
    return 7 * (r - r0 + 1) - 1 + cost
