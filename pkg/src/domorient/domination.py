"""Dominating sets, the standard-pair predicate, and the standardizing
transformations with provenance for pulling orientations back.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantBreachError, PreconditionError
from .graph import (
    Orientation,
    Role,
    UndirectedMultigraph,
    is_bridgeless,
    is_strong,
)

EXACT_DOMINATION_THRESHOLD = 24


@dataclass(frozen=True)
class DominatingSet:
    members: frozenset[int]
    graph: UndirectedMultigraph
    exact: bool = True  # False when produced by the greedy fallback

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


def is_dominating(g: UndirectedMultigraph, members) -> bool:
    members = set(members)
    for v in g.vertices():
        if v in members:
            continue
        if not any(w in members for w in g.neighbors(v)):
            return False
    return True


def minimum_dominating_set(g: UndirectedMultigraph, exact_threshold: int = EXACT_DOMINATION_THRESHOLD) -> DominatingSet:
    """Minimum dominating set, exact up to `exact_threshold` vertices.

    Exact mode is branch and bound over vertex inclusion with coverage
    bitmaps; larger inputs fall back to the classic greedy, flagged
    `exact=False`.
    """
    verts = g.vertices()
    if not verts:
        return DominatingSet(frozenset(), g, True)
    if len(verts) > exact_threshold:
        return _greedy_dominating_set(g)

    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    full = (1 << n) - 1
    closed = []
    for v in verts:
        mask = 1 << index[v]
        for w in g.neighbors(v):
            mask |= 1 << index[w]
        closed.append(mask)

    best_mask = full
    best_size = n + 1
    max_cover = max(bin(m).count("1") for m in closed)

    def search(chosen: int, covered: int, size: int) -> None:
        nonlocal best_mask, best_size
        if covered == full:
            if size < best_size:
                best_size = size
                best_mask = chosen
            return
        remaining = bin(full & ~covered).count("1")
        if size + (remaining + max_cover - 1) // max_cover >= best_size:
            return
        # branch on the uncovered vertex with fewest coverers
        pivot = -1
        pivot_opts: list[int] = []
        for i in range(n):
            if covered >> i & 1:
                continue
            opts = [j for j in range(n) if closed[j] >> i & 1]
            if pivot < 0 or len(opts) < len(pivot_opts):
                pivot, pivot_opts = i, opts
                if len(opts) == 1:
                    break
        for j in pivot_opts:
            search(chosen | (1 << j), covered | closed[j], size + 1)

    search(0, 0, 0)
    members = frozenset(verts[i] for i in range(n) if best_mask >> i & 1)
    return DominatingSet(members, g, True)


def _greedy_dominating_set(g: UndirectedMultigraph) -> DominatingSet:
    uncovered = set(g.vertices())
    members: set[int] = set()
    while uncovered:
        best_v, best_gain = None, -1
        for v in g.vertices():
            gain = len(uncovered & ({v} | set(g.neighbors(v))))
            if gain > best_gain:
                best_v, best_gain = v, gain
        members.add(best_v)
        uncovered -= {best_v} | set(g.neighbors(best_v))
    return DominatingSet(frozenset(members), g, False)


# -- standard pairs ----------------------------------------------------


def has_attached_triangle(g: UndirectedMultigraph, v: int) -> bool:
    """True when v closes a triangle with two degree-2 vertices."""
    nbrs = g.neighbors(v)
    for i, a in enumerate(nbrs):
        if g.degree(a) != 2:
            continue
        for b in nbrs[i + 1:]:
            if g.degree(b) == 2 and g.has_edge(a, b):
                return True
    return False


def standard_pair_violations(g: UndirectedMultigraph, dominators) -> list[str]:
    """Empty list iff (g, dominators) is a standard pair.

    The four conditions are reported independently so tests can target
    each one.
    """
    doms = set(dominators)
    out: list[str] = []
    if not is_bridgeless(g):
        out.append("graph has a bridge or is disconnected")
    for v in sorted(doms):
        for w in g.neighbors(v):
            if w in doms:
                out.append(f"dominators {v} and {w} are adjacent")
    for v in g.vertices():
        if v in doms:
            continue
        k = sum(1 for w in g.neighbors(v) if w in doms)
        if k != 1:
            out.append(f"vertex {v} has {k} dominator neighbors")
    for v in sorted(doms):
        if not has_attached_triangle(g, v):
            out.append(f"dominator {v} lacks an attached triangle")
    return out


@dataclass
class Provenance:
    """Record of the standardizing operations, for pull-back.

    subdivision_paths maps an original edge id to the ordered vertex chain
    that replaced it in the standardized graph. attached_triangles maps
    each dominator that received a fresh triangle to its two new vertices.
    """

    original: UndirectedMultigraph
    standardized: UndirectedMultigraph
    subdivision_paths: dict[int, list[int]] = field(default_factory=dict)
    attached_triangles: dict[int, tuple[int, int]] = field(default_factory=dict)

    def is_identity(self) -> bool:
        return not self.subdivision_paths and not self.attached_triangles


@dataclass
class StandardPair:
    graph: UndirectedMultigraph
    dominators: DominatingSet
    provenance: Provenance | None = None

    def violations(self) -> list[str]:
        return standard_pair_violations(self.graph, self.dominators.members)

    def is_standard(self) -> bool:
        return not self.violations()


def standardize(g: UndirectedMultigraph, d: DominatingSet) -> StandardPair:
    """Apply the three standardizing operations and record provenance.

    Operations, in order: subdivide every dominator-dominator edge twice;
    for a vertex dominated by t >= 2 dominators keep the edge to the
    smallest dominator and subdivide the others once; attach a fresh
    triangle to any dominator lacking one. The dominator set is unchanged
    as a vertex set and still dominates the result.
    """
    if not is_bridgeless(g):
        raise PreconditionError("not bridgeless")
    if not is_dominating(g, d.members):
        raise PreconditionError("set is not dominating")
    doms = set(d.members)
    work = g.copy()
    for v in work.vertices():
        work.set_role(v, Role.DOMINATING if v in doms else Role.DOMINATED)
    prov = Provenance(original=g, standardized=work)

    for eid, u, v in work.edge_tuples():
        if u in doms and v in doms:
            created = _subdivide_recorded(work, prov, eid, 2)
            del created

    for v in sorted(work.vertices()):
        if v in doms:
            continue
        dom_edges = [
            (w, eid)
            for w in work.neighbors(v)
            if w in doms
            for eid in work.edge_ids_between(v, w)
        ]
        dom_vertices = sorted({w for w, _ in dom_edges})
        if len(dom_vertices) <= 1:
            continue
        keep = dom_vertices[0]
        for w, eid in sorted(dom_edges, key=lambda t: (t[0], t[1])):
            if w == keep:
                continue
            _subdivide_recorded(work, prov, eid, 1)

    for v in sorted(doms):
        if not has_attached_triangle(work, v):
            a = work.add_vertex(Role.AUXILIARY)
            b = work.add_vertex(Role.AUXILIARY)
            work.add_edge(v, a)
            work.add_edge(a, b)
            work.add_edge(b, v)
            prov.attached_triangles[v] = (a, b)

    sp = StandardPair(work, DominatingSet(frozenset(doms), work, d.exact), prov)
    bad = sp.violations()
    if bad:
        raise InvariantBreachError(f"standardize produced a non-standard pair: {bad}")
    return sp


def _subdivide_recorded(work: UndirectedMultigraph, prov: Provenance, eid: int, k: int) -> list[int]:
    u, v = work.endpoints(eid)
    work.remove_edge(eid)
    created = [work.add_vertex(Role.AUXILIARY) for _ in range(k)]
    chain = [u, *created, v]
    for a, b in zip(chain, chain[1:]):
        work.add_edge(a, b)
    prov.subdivision_paths[eid] = chain
    return created


def pull_back(p: Provenance, o: Orientation) -> Orientation:
    """Translate an orientation of the standardized graph to the original.

    Each subdivided path is forced into one consistent direction because
    its interior vertices have degree 2; that direction is assigned to the
    original edge. Attached-triangle vertices are dropped.
    """
    if o.base is not p.standardized:
        raise PreconditionError("orientation does not belong to this provenance")
    if not is_strong(o):
        raise PreconditionError("orientation is not strong")
    arc_of = {}
    for eid, (t, h) in o.direction.items():
        arc_of[(t, h)] = eid
    direction: dict[int, tuple[int, int]] = {}
    for eid in p.original.edges():
        if eid in p.subdivision_paths:
            chain = p.subdivision_paths[eid]
            forward = all((a, b) in arc_of for a, b in zip(chain, chain[1:]))
            backward = all((b, a) in arc_of for a, b in zip(chain, chain[1:]))
            if forward == backward:
                raise InvariantBreachError(f"inconsistent path direction for edge {eid}")
            direction[eid] = (chain[0], chain[-1]) if forward else (chain[-1], chain[0])
        else:
            direction[eid] = o.direction[eid]
    result = Orientation(p.original, direction)
    if not is_strong(result):
        raise InvariantBreachError("pull back lost strongness")
    return result
