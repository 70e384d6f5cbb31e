"""Alternative-subgraph machinery.

An alternative subgraph is a connected bridgeless subgraph assembled from
dominator triples (x, x1, x2), where each dominator is adjacent inside the
subgraph to exactly its two listed dominated vertices and every vertex
belongs to one triple. ``find_alternative_from`` grows one containing a
given dominator and at least two dominators by the forward
cycle-contraction iteration and the backward recovery; the brute-force
enumerator is the oracle it is checked against.

The recovery follows a fixed branch taxonomy. Whenever a configuration
outside that taxonomy shows up, the search aborts with the full step trace
instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .domination import DominatingSet, StandardPair
from .errors import BudgetExceededError, InvariantBreachError, PreconditionError
from .graph import UndirectedMultigraph, is_bridgeless
from .quotient import QuotientMap, contract_and_standardize
from .shapes import H01, H02, induced_subgraph, role_isomorphic

MAX_EXACT_DOMINATORS = 12
BRUTE_FORCE_VERTEX_LIMIT = 20


@dataclass(frozen=True)
class AlternativeSubgraph:
    dominators: tuple[int, ...]
    dominated: dict[int, tuple[int, int]]
    vertices: frozenset[int]
    edges: frozenset[int]
    exact: bool = True

    @property
    def s(self) -> int:
        return len(self.dominators)

    def assignment(self):
        """Canonical (dominator, pair) tuple used for oracle membership."""
        return tuple((d, self.dominated[d]) for d in self.dominators)


def verify_alternative(g: UndirectedMultigraph, doms, vset, eset) -> list[str]:
    """Violations of the alternative-subgraph conditions; empty iff valid."""
    doms = set(doms)
    vset = set(vset)
    eset = set(eset)
    out: list[str] = []
    for eid in eset:
        u, v = g.endpoints(eid)
        if u not in vset or v not in vset:
            out.append(f"edge {eid} leaves the vertex set")
            return out
    if not vset:
        return ["empty vertex set"]
    sub = induced_subgraph(g, vset, eset)
    if not is_bridgeless(sub):
        out.append("subgraph is not connected and bridgeless")
    inner_doms = sorted(vset & doms)
    if not inner_doms:
        out.append("no dominator inside")
    for d in inner_doms:
        nbrs = [w for w in sub.neighbors(d)] if sub.has_vertex(d) else []
        if len(nbrs) != 2 or len(sub.incident_edges(d)) != 2:
            out.append(f"dominator {d} does not dominate exactly two vertices")
    for v in sorted(vset - doms):
        k = sum(1 for w in sub.neighbors(v) if w in doms)
        if k != 1:
            out.append(f"vertex {v} has {k} dominator neighbors inside")
    return out


def alternative_from_parts(
    g: UndirectedMultigraph, doms, vset, eset, exact: bool = True
) -> AlternativeSubgraph:
    bad = verify_alternative(g, doms, vset, eset)
    if bad:
        raise InvariantBreachError(f"not an alternative subgraph: {bad}")
    sub = induced_subgraph(g, vset, eset)
    inner = tuple(sorted(set(vset) & set(doms)))
    dominated = {d: tuple(sorted(sub.neighbors(d))) for d in inner}
    return AlternativeSubgraph(inner, dominated, frozenset(vset), frozenset(eset), exact)


# -- brute-force oracle -------------------------------------------------


def _assignment_candidates(g, doms, d):
    nbrs = [w for w in g.neighbors(d) if w not in doms]
    return list(combinations(nbrs, 2))


def _induced_union_edges(g, doms, chosen: dict[int, tuple[int, int]]):
    """Edge ids induced on the union of triples.

    Inside the union every dominator's neighbors are exactly its own pair,
    so no edge needs to be excluded by hand.
    """
    vset = set()
    for d, pair in chosen.items():
        vset.add(d)
        vset.update(pair)
    eset = set()
    for eid, u, v in g.edge_tuples():
        if u in vset and v in vset:
            eset.add(eid)
    return vset, eset


def brute_force_alternative(sp: StandardPair, min_s: int = 1) -> list[AlternativeSubgraph]:
    """All alternative subgraphs with at least min_s dominators, one
    canonical representative per (dominator set, pair assignment).

    The representative carries every induced edge; any edge-minimal
    variant with the same assignment is a subgraph of it, and adding edges
    never breaks the conditions, so membership checks compare assignments.
    """
    g = sp.graph
    if g.num_vertices() > BRUTE_FORCE_VERTEX_LIMIT:
        raise BudgetExceededError("brute force limited to 20 vertices")
    doms = set(sp.dominators.members)
    out: list[AlternativeSubgraph] = []
    dom_list = sorted(doms)
    for s in range(min_s, len(dom_list) + 1):
        for subset in combinations(dom_list, s):
            pools = [_assignment_candidates(g, doms, d) for d in subset]
            if any(not p for p in pools):
                continue

            def rec(i: int, chosen: dict):
                if i == s:
                    vset, eset = _induced_union_edges(g, doms, chosen)
                    if not verify_alternative(g, doms, vset, eset):
                        out.append(alternative_from_parts(g, doms, vset, eset))
                    return
                for pair in pools[i]:
                    chosen[subset[i]] = pair
                    rec(i + 1, chosen)
                del chosen[subset[i]]

            rec(0, {})
    return out


# -- typed paths and escapes --------------------------------------------


def _extend_typed(g: UndirectedMultigraph, doms, path: list[int]) -> list[int]:
    """Greedily extend by (dominated, dominated, dominator) chunks,
    smallest ids first, until no extension exists.
    """
    used = set(path)
    while True:
        u = path[-1]
        ext = None
        for w in g.neighbors(u):
            if w in used or w in doms:
                continue
            for w2 in g.neighbors(w):
                if w2 in used or w2 in doms or w2 == u:
                    continue
                for y in g.neighbors(w2):
                    if y in doms and y not in used:
                        ext = (w, w2, y)
                        break
                if ext:
                    break
            if ext:
                break
        if ext is None:
            return path
        path.extend(ext)
        used.update(ext)


def maximal_typed_path(sp: StandardPair, start: int) -> list[int]:
    """Maximal path from a dominator alternating one dominator then two
    dominated vertices, ending at a dominator.
    """
    if start not in sp.dominators.members:
        raise PreconditionError("start vertex must be a dominator")
    path = _extend_typed(sp.graph, set(sp.dominators.members), [start])
    if len(path) < 4:
        raise InvariantBreachError(f"no typed extension from {start}")
    return path


def _shortest_escape(g: UndirectedMultigraph, doms, path: list[int]) -> list[int]:
    """Shortest path from the path's end back to an earlier path vertex,
    avoiding the last path edge (all parallel copies) and not passing
    through path vertices. Ends at a dominated vertex at length 2 or at a
    dominator at length 3; anything else is a taxonomy breach.
    """
    u = path[-1]
    pred = path[-2]
    targets = set(path) - {u}
    parent: dict[int, int] = {u: -1}
    layer = [u]
    depth = 0
    while layer and depth < 3:
        depth += 1
        nxt: list[int] = []
        hits: list[int] = []
        for v in layer:
            for w in g.neighbors(v):
                if depth == 1 and v == u and w == pred:
                    continue  # the excluded last path edge
                if w in targets:
                    if w not in parent:
                        hits.append(w)
                        parent.setdefault(w, v)
                elif w not in parent:
                    parent[w] = v
                    nxt.append(w)
        if hits:
            dom_hits = sorted(h for h in hits if h in doms)
            sub_hits = sorted(h for h in hits if h not in doms)
            if depth == 1:
                raise InvariantBreachError(f"escape of length 1 at {u}: {hits}")
            if depth == 2:
                if not sub_hits:
                    raise InvariantBreachError(f"length-2 escape hits only dominators: {hits}")
                end = sub_hits[0]
            else:
                if not dom_hits:
                    raise InvariantBreachError(f"length-3 escape hits no dominator: {hits}")
                end = dom_hits[0]
            walk = [end]
            while walk[-1] != u:
                walk.append(parent[walk[-1]])
            return list(reversed(walk))
        layer = sorted(set(nxt))
    raise InvariantBreachError(f"no escape within length 3 from {u}")


def _cycle_edge_ids(g: UndirectedMultigraph, cyc: list[int]) -> list[int]:
    out = []
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        ids = g.edge_ids_between(a, b)
        if not ids:
            raise InvariantBreachError(f"cycle step {a}-{b} has no edge")
        out.append(ids[0])
    return out


def _degree3_sum(g: UndirectedMultigraph) -> int:
    return sum(d for v in g.vertices() if (d := g.degree(v)) >= 3)


# -- forward/backward search --------------------------------------------


@dataclass
class StepRecord:
    level: int
    graph: UndirectedMultigraph
    dominators: frozenset[int]
    path: tuple[int, ...]
    escape: tuple[int, ...]
    cycle_vertices: tuple[int, ...]
    cycle_edges: frozenset[int]
    anchor: int
    anchor_kind: str
    registry_before: dict[int, tuple[int, int, int, int]]
    contracted: int | None = None
    qmap: QuotientMap | None = None
    result_graph: UndirectedMultigraph | None = None


@dataclass
class SearchState:
    records: list[StepRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def trace_text(self) -> str:
        lines = []
        for r in self.records:
            lines.append(
                f"step {r.level} kind={r.anchor_kind} anchor={r.anchor} "
                f"path={list(r.path)} escape={list(r.escape)} "
                f"cycle={list(r.cycle_vertices)} contracted={r.contracted}"
            )
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)

    def fail(self, msg: str):
        raise InvariantBreachError(msg, trace=self.trace_text())


def _anchor_kind(g, doms, path, anchor):
    if anchor in doms:
        return "dominator"
    dom_nbrs = [w for w in g.neighbors(anchor) if w in doms]
    if len(dom_nbrs) != 1:
        raise InvariantBreachError(f"anchor {anchor} has {len(dom_nbrs)} dominators")
    dom = dom_nbrs[0]
    pos = path.index(anchor)
    if pos + 1 < len(path) and path[pos + 1] == dom:
        return "dominated_in_cycle"
    if pos > 0 and path[pos - 1] == dom:
        return "dominated_by_predecessor"
    raise InvariantBreachError(f"anchor {anchor} dominated by non-neighbor {dom} in path")


def _update_registry(state, registry, cycle_set, qm, g_old, doms_old):
    """Carry bad paths through one contraction; see the branch notes."""
    h = qm.contracted_vertex
    boundary_by_orig = qm.boundary
    new_reg: dict[int, tuple[int, int, int, int]] = {}

    def orig_edge_between(a, b):
        ids = g_old.edge_ids_between(a, b)
        if not ids:
            state.fail(f"registry expected edge {a}-{b}")
        return ids[0]

    for key, (y, z1, z2, v) in registry.items():
        del key
        inside = [p in cycle_set for p in (y, z1, z2, v)]
        if inside[1] or inside[2]:
            # the degree-2 chain forces the whole path into the cycle
            if not all(inside):
                state.fail(f"bad path {y},{z1},{z2},{v} partially contracted")
            continue
        if inside[0] and inside[3]:
            continue  # both ends contracted; the path degenerates to a loop at h
        if inside[3]:
            rec = boundary_by_orig.get(orig_edge_between(z2, v))
            if rec is None or rec.subdivision_count != 0:
                state.fail(f"bad path tail {v} expected an unsubdivided boundary edge")
            if h in new_reg:
                state.fail(f"two bad paths transfer to {h}")
            new_reg[h] = (y, z1, z2, h)
        elif inside[0]:
            rec = boundary_by_orig.get(orig_edge_between(y, z1))
            if rec is None or rec.subdivision_count != 0:
                state.fail(f"bad path head {y} expected an unsubdivided boundary edge")
            if v in new_reg:
                state.fail(f"two bad paths anchored at {v}")
            new_reg[v] = (h, z1, z2, v)
        else:
            new_reg[v] = (y, z1, z2, v)
    return new_reg


def find_alternative_from(sp: StandardPair, x: int) -> AlternativeSubgraph:
    """Alternative subgraph containing dominator x and at least two
    dominators, for a standard pair with |D| >= 2.
    """
    doms0 = set(sp.dominators.members)
    if x not in doms0:
        raise PreconditionError("x must be a dominator")
    if len(doms0) < 2:
        raise PreconditionError("need at least two dominators")
    state = SearchState()
    g = sp.graph
    doms = frozenset(doms0)
    registry: dict[int, tuple[int, int, int, int]] = {}
    path = _extend_typed(g, doms, [x])
    if len(path) < 4:
        state.fail(f"no typed path from {x}")

    while True:
        level = len(state.records) + 1
        escape = _shortest_escape(g, doms, path)
        anchor = escape[-1]
        kind = _anchor_kind(g, doms, path, anchor)
        pos = path.index(anchor)
        cyc = list(path[pos:]) + list(escape[1:-1])
        cyc_edges = frozenset(_cycle_edge_ids(g, cyc))
        rec = StepRecord(
            level=level,
            graph=g,
            dominators=doms,
            path=tuple(path),
            escape=tuple(escape),
            cycle_vertices=tuple(cyc),
            cycle_edges=cyc_edges,
            anchor=anchor,
            anchor_kind=kind,
            registry_before=dict(registry),
        )
        state.records.append(rec)
        if not set(cyc) & doms:
            state.fail("cycle misses every dominator")
        if kind != "dominated_by_predecessor":
            bad = verify_alternative(g, doms, set(cyc), cyc_edges)
            if bad:
                state.fail(f"cycle fails the alternative predicate: {bad}")
        for y, z1, z2, v in registry.values():
            if v in path:
                i = path.index(v)
                if i < 3 or (path[i - 3], path[i - 2], path[i - 1]) != (y, z1, z2):
                    state.fail(f"bad path {y},{z1},{z2},{v} not embedded in the path")
        if anchor == x:
            break

        before = _degree3_sum(g)
        cycle_set = frozenset(cyc)
        new_g, new_doms, qm = contract_and_standardize(g, doms, cycle_set)
        rec.contracted = qm.contracted_vertex
        rec.qmap = qm
        rec.result_graph = new_g
        after = _degree3_sum(new_g)
        if after > before - 2:
            state.fail(f"degree-3 sum fell only {before - after}")
        registry = _update_registry(state, registry, cycle_set, qm, g, doms)
        pred = path[pos - 1]
        pred_edge_ids = g.edge_ids_between(pred, anchor)
        brec = qm.boundary.get(pred_edge_ids[0]) if pred_edge_ids else None
        if brec is None:
            state.fail(f"no boundary record for path edge {pred}-{anchor}")
        h = qm.contracted_vertex
        if kind == "dominated_by_predecessor":
            if brec.subdivision_count != 2:
                state.fail("bad-path boundary edge not subdivided twice")
            if h in registry:
                state.fail(f"bad path collision at {h}")
            registry[h] = (pred, brec.created[0], brec.created[1], h)
        new_path = list(path[:pos]) + list(brec.created) + [h]
        path = _extend_typed(new_g, new_doms, new_path)
        g, doms = new_g, new_doms

    # backward phase: per level there may be more than one legitimate way
    # to absorb the expanded cycle; gate every candidate on the
    # alternative predicate plus the bad-path property and backtrack on a
    # downstream dead end
    terminal = state.records[-1]
    result = _recover_chain(
        state,
        x,
        len(state.records) - 2,
        set(terminal.cycle_vertices),
        set(terminal.cycle_edges),
    )
    if result is None:
        state.fail("no recovery choice sequence survived all levels")
    c_vertices, c_edges = result
    return alternative_from_parts(sp.graph, doms0, c_vertices, c_edges)


def _recover_chain(state, x, idx, c_vertices, c_edges):
    if idx < 0:
        return c_vertices, c_edges
    rec = state.records[idx]
    for cand_v, cand_e in _recover_candidates(state, rec, c_vertices, c_edges):
        if verify_alternative(rec.graph, rec.dominators, cand_v, cand_e):
            continue
        if x not in cand_v or len(cand_v & rec.dominators) < 2:
            continue
        if not _star_holds(rec, cand_v, cand_e):
            continue
        done = _recover_chain(state, x, idx - 1, cand_v, cand_e)
        if done is not None:
            return done
    return None


def _star_holds(rec, vset, eset) -> bool:
    """Bad paths whose end vertex survives must be kept whole, edges included."""
    g = rec.graph
    for y, z1, z2, v in rec.registry_before.values():
        if v not in vset:
            continue
        chain = (y, z1, z2, v)
        if any(p not in vset for p in chain):
            return False
        for a, b in zip(chain, chain[1:]):
            if not any(eid in eset for eid in g.edge_ids_between(a, b)):
                return False
    return True


def _recover_candidates(state, rec, c_vertices, c_edges):
    """Candidate expansions of the subgraph one contraction level down,
    paper-primary branch first, deterministic order."""
    h = rec.contracted
    qm = rec.qmap
    g = rec.graph
    doms = rec.dominators
    if h not in c_vertices:
        yield set(c_vertices), set(c_edges)
        return
    tri = set(qm.triangle)
    if c_vertices & tri:
        state.fail(f"subgraph uses the fresh triangle at level {rec.level}")
    stub_lookup = qm.stub_lookup()
    incident = [eid for eid in c_edges if h in rec.result_graph.endpoints(eid)]
    if len(incident) != 2:
        state.fail(f"contracted vertex carries {len(incident)} subgraph edges")
    stubs = []
    for eid in sorted(incident):
        brec = stub_lookup.get(eid)
        if brec is None:
            state.fail(f"subgraph edge {eid} at the contracted vertex is not a boundary stub")
        for q_eid in brec.quotient_edges:
            if q_eid not in c_edges:
                state.fail(f"boundary path for edge {brec.orig_eid} only partially present")
        stubs.append(brec)
    if stubs[0].orig_eid == stubs[1].orig_eid:
        state.fail("both stubs map to one original edge")

    base_v = set(c_vertices) - {h}
    base_e = set(c_edges)
    for brec in stubs:
        base_v.difference_update(brec.created)
        base_e.difference_update(brec.quotient_edges)
        base_e.add(brec.orig_eid)
        if brec.outside not in base_v:
            state.fail(f"stub outside endpoint {brec.outside} missing")
    attach = sorted({brec.inside for brec in stubs})
    cyc = list(rec.cycle_vertices)

    def with_whole_cycle():
        return base_v | set(cyc), base_e | set(rec.cycle_edges)

    def with_arc(arc):
        v = base_v | set(arc)
        e = set(base_e)
        for a, b in zip(arc, arc[1:]):
            ids = [eid for eid in g.edge_ids_between(a, b) if eid in rec.cycle_edges]
            if not ids:
                return None
            e.add(ids[0])
        return v, e

    if len(attach) == 1:
        c = attach[0]
        if c in doms:
            yield base_v | {c}, base_e  # re-root: the cycle is dropped
        else:
            yield with_whole_cycle()
        return

    c1, c2 = attach
    i1, i2 = cyc.index(c1), cyc.index(c2)
    if i1 > i2:
        i1, i2 = i2, i1
    arcs = [cyc[i1:i2 + 1], cyc[i2:] + cyc[:i1 + 1]]
    arcs.sort(key=lambda a: tuple(sorted(a)))
    arc_candidates = [cand for arc in arcs if (cand := with_arc(arc)) is not None]
    if c1 in doms or c2 in doms:
        yield from arc_candidates
        yield with_whole_cycle()
    else:
        yield with_whole_cycle()
        yield from arc_candidates


# -- maximization and classification -------------------------------------


def max_alternative(sp: StandardPair) -> AlternativeSubgraph:
    """Alternative subgraph with the maximum number of dominators, made
    edge-minimal by greedy deletion. Exact up to 12 dominators via
    backtracking over dominator subsets and pair assignments; heuristic
    (flagged) beyond that.
    """
    doms = sorted(sp.dominators.members)
    if len(doms) < 2:
        raise PreconditionError("need at least two dominators")
    if len(doms) > MAX_EXACT_DOMINATORS:
        best = None
        for x in doms:
            cand = find_alternative_from(sp, x)
            if best is None or cand.s > best.s:
                best = cand
        vset, eset = set(best.vertices), set(best.edges)
        vset, eset = _edge_minimalize(sp.graph, sp.dominators.members, vset, eset)
        return alternative_from_parts(sp.graph, sp.dominators.members, vset, eset, exact=False)

    g = sp.graph
    dset = set(doms)
    found = None
    for s in range(len(doms), 1, -1):
        for subset in combinations(doms, s):
            pools = [_assignment_candidates(g, dset, d) for d in subset]
            if any(not p for p in pools):
                continue
            chosen: dict[int, tuple[int, int]] = {}

            def rec(i: int):
                nonlocal found
                if found is not None:
                    return
                if i == s:
                    vset, eset = _induced_union_edges(g, dset, chosen)
                    if not verify_alternative(g, dset, vset, eset):
                        found = (vset, eset)
                    return
                for pair in pools[i]:
                    chosen[subset[i]] = pair
                    rec(i + 1)
                    if found is not None:
                        return
                del chosen[subset[i]]

            rec(0)
            if found is not None:
                break
        if found is not None:
            break
    if found is None:
        raise InvariantBreachError("no alternative subgraph with two dominators found")
    vset, eset = _edge_minimalize(g, dset, *found)
    return alternative_from_parts(g, dset, vset, eset)


def _edge_minimalize(g, doms, vset, eset):
    """Drop edges in ascending id order while the conditions still hold."""
    eset = set(eset)
    for eid in sorted(eset):
        trial = eset - {eid}
        if not verify_alternative(g, doms, vset, trial):
            eset = trial
    return set(vset), eset


def classify_h01_h02(a: AlternativeSubgraph, host: UndirectedMultigraph) -> str:
    """Match a two-dominator edge-minimal subgraph against the two
    canonical shapes, respecting roles."""
    if a.s != 2:
        raise PreconditionError("classification requires exactly two dominators")
    sub = induced_subgraph(host, a.vertices, a.edges)
    if role_isomorphic(sub, a.dominators, H01.build(), H01.dominators):
        return "H01"
    if role_isomorphic(sub, a.dominators, H02.build(), H02.dominators):
        return "H02"
    return "other"


def enumerate_h01_h02(sp: StandardPair) -> list[AlternativeSubgraph]:
    """All embeddings of the two minimal two-dominator shapes.

    Any six-vertex subgraph built as a dominator pair with the required
    edges automatically satisfies the alternative conditions, so
    enumeration is purely structural.
    """
    g = sp.graph
    doms = sorted(sp.dominators.members)
    dset = set(doms)
    out: list[AlternativeSubgraph] = []
    seen: set[frozenset[int]] = set()

    def emit(vset, epairs):
        eset = set()
        for u, v in epairs:
            eset.add(g.edge_ids_between(u, v)[0])
        key = frozenset(eset)
        if key in seen:
            return
        seen.add(key)
        out.append(alternative_from_parts(g, dset, vset, eset))

    for p, q in combinations(doms, 2):
        np_, nq = g.neighbors(p), g.neighbors(q)
        # 6-cycle p-a-c-q-d-b-p
        for a, b in combinations(np_, 2):
            for c, d in [(c, d) for c in nq for d in nq if c != d]:
                if len({p, q, a, b, c, d}) != 6:
                    continue
                if g.has_edge(a, c) and g.has_edge(b, d):
                    emit({p, q, a, b, c, d}, [(p, a), (p, b), (q, c), (q, d), (a, c), (b, d)])
        # triangle at one end, 4-cycle at the other, glued at the cut vertex
        for tri_dom, cyc_dom in ((p, q), (q, p)):
            for glue in g.neighbors(tri_dom):
                for other in g.neighbors(tri_dom):
                    if other == glue or not g.has_edge(glue, other):
                        continue
                    for c, d in combinations(g.neighbors(cyc_dom), 2):
                        if len({tri_dom, cyc_dom, glue, other, c, d}) != 6:
                            continue
                        if g.has_edge(glue, c) and g.has_edge(glue, d):
                            emit(
                                {tri_dom, cyc_dom, glue, other, c, d},
                                [
                                    (tri_dom, glue),
                                    (tri_dom, other),
                                    (glue, other),
                                    (cyc_dom, c),
                                    (cyc_dom, d),
                                    (glue, c),
                                    (glue, d),
                                ],
                            )
    return out
