"""Plain-text edge-list documents.

Format:

    # optional comment lines
    <vertex-count> <edge-count>
    <u> <v>          one line per edge, labels in [0, vertex-count)
    D: <d1> <d2> ... optional dominator annotation

Oriented documents use the same layout with a ``# oriented`` first line;
their edge lines read tail head.
"""

from __future__ import annotations

from .domination import DominatingSet
from .errors import GraphInputError
from .graph import Orientation, Role, UndirectedMultigraph


def parse_edge_list(text: str):
    """Returns (graph, dominators-or-None). Vertex labels map to ids 0..n-1."""
    lines = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln and not ln.startswith("#")]
    if not body:
        raise GraphInputError("empty document")
    head = body[0].split()
    if len(head) != 2:
        raise GraphInputError(f"header must be two integers, got {body[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphInputError(f"bad header {body[0]!r}") from exc
    g = UndirectedMultigraph()
    for _ in range(n):
        g.add_vertex(Role.DOMINATED)
    doms = None
    edge_lines = body[1:]
    seen_edges = 0
    for ln in edge_lines:
        if ln.startswith("D:"):
            try:
                members = frozenset(int(t) for t in ln[2:].split())
            except ValueError as exc:
                raise GraphInputError(f"bad dominator line {ln!r}") from exc
            if not all(0 <= v < n for v in members):
                raise GraphInputError("dominator label out of range")
            for v in members:
                g.set_role(v, Role.DOMINATING)
            doms = DominatingSet(members, g, True)
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphInputError(f"bad edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphInputError(f"bad edge line {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge label out of range in {ln!r}")
        if u == v:
            raise GraphInputError(f"self-loop in {ln!r}")
        g.add_edge(u, v)
        seen_edges += 1
    if seen_edges != m:
        raise GraphInputError(f"header promised {m} edges, found {seen_edges}")
    return g, doms


def serialize_graph(g: UndirectedMultigraph, doms=None, comments=()) -> str:
    labels = {v: i for i, v in enumerate(g.vertices())}
    out = [f"# {c}" for c in comments]
    out.append(f"{g.num_vertices()} {g.num_edges()}")
    for eid, u, v in g.edge_tuples():
        out.append(f"{labels[u]} {labels[v]}")
    if doms is not None:
        out.append("D: " + " ".join(str(labels[v]) for v in sorted(doms)))
    return "\n".join(out) + "\n"


def serialize_orientation(o: Orientation, comments=()) -> str:
    g = o.base
    labels = {v: i for i, v in enumerate(g.vertices())}
    out = ["# oriented"]
    out.extend(f"# {c}" for c in comments)
    out.append(f"{g.num_vertices()} {g.num_edges()}")
    for eid, t, h in o.arcs():
        out.append(f"{labels[t]} {labels[h]}")
    return "\n".join(out) + "\n"


def parse_orientation(text: str):
    """Reload an oriented document: returns (graph, direction map)."""
    g, _ = parse_edge_list(text)
    # the parse above stored each line as an undirected edge in order; the
    # direction is the line order (tail first)
    lines = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in lines if ln and not ln.startswith("#") and not ln.startswith("D:")]
    direction = {}
    for eid, ln in zip(g.edges(), body[1:]):
        a, b = (int(t) for t in ln.split())
        direction[eid] = (a, b)
    return g, direction
