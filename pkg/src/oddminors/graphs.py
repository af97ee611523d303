"""Immutable undirected simple graphs and the primitives built on them.

Vertices are non-negative integers.  Edges are stored as sorted 2-tuples.
Graphs are frozen after construction, so every operation in the package is
a pure function over shared inputs.
"""

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import LoopEdge, DuplicateEdge, NegativeWeight, WeightOverflow

MAX_WEIGHT = 2**63 - 1


def edge_key(u, v):
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


def checked_add(a, b):
    total = a + b
    if total > MAX_WEIGHT:
        raise WeightOverflow(f"weight sum {total} exceeds 64-bit range")
    return total


def checked_sum(values):
    total = 0
    for v in values:
        total = checked_add(total, v)
    return total


class Graph:
    """Finite simple undirected graph with optional weights and labels.

    Attributes
    ----------
    vertices : frozenset of int
    edges : frozenset of (int, int), each sorted
    vertex_labels : dict or None
        Side map id -> label (generators store lattice coordinates here).
    vertex_weights, edge_weights : dict or None
        When present they are total on the vertex (edge) set.
    """

    __slots__ = ("vertices", "edges", "vertex_labels", "vertex_weights",
                 "edge_weights", "_adj")

    def __init__(self, vertices, edges, vertex_labels=None,
                 vertex_weights=None, edge_weights=None):
        self.vertices = frozenset(vertices)
        self.edges = frozenset(edge_key(u, v) for u, v in edges)
        for u, v in self.edges:
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u},{v}) has endpoint outside vertex set")
        for u in self.vertices:
            if not isinstance(u, int) or u < 0:
                raise ValueError(f"vertex ids must be non-negative integers, got {u!r}")
        if vertex_weights is not None:
            vertex_weights = dict(vertex_weights)
            _check_weight_map(vertex_weights, self.vertices, "vertex")
        if edge_weights is not None:
            edge_weights = {edge_key(*e): w for e, w in edge_weights.items()}
            _check_weight_map(edge_weights, self.edges, "edge")
        self.vertex_labels = dict(vertex_labels) if vertex_labels else None
        self.vertex_weights = vertex_weights
        self.edge_weights = edge_weights
        adj = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return edge_key(u, v) in self.edges

    def __contains__(self, v):
        return v in self.vertices

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


def _check_weight_map(weights, keys, kind):
    missing = set(keys) - set(weights)
    if missing:
        raise ValueError(f"{kind} weights missing for {sorted(missing)[:5]}")
    for key, w in weights.items():
        if key not in keys:
            raise ValueError(f"{kind} weight given for unknown {key}")
        if not isinstance(w, int):
            raise ValueError(f"{kind} weight for {key} is not an integer")
        if w < 0:
            raise NegativeWeight(f"{kind} weight for {key} is negative")
        if w > MAX_WEIGHT:
            raise WeightOverflow(f"{kind} weight for {key} exceeds 64-bit range")


def build_graph(edge_list, vertices=(), vertex_labels=None,
                vertex_weights=None, edge_weights=None, allow_duplicates=True):
    """Build a Graph from an edge list, deduplicating parallel edges.

    `vertices` adds isolated vertices beyond the edge endpoints.  With
    `allow_duplicates=False` a repeated edge raises DuplicateEdge instead
    of being merged.
    """
    seen = set()
    for u, v in edge_list:
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        e = edge_key(u, v)
        if e in seen and not allow_duplicates:
            raise DuplicateEdge(f"edge {e} repeated")
        seen.add(e)
    verts = set(vertices)
    for u, v in seen:
        verts.add(u)
        verts.add(v)
    return Graph(verts, seen, vertex_labels=vertex_labels,
                 vertex_weights=vertex_weights, edge_weights=edge_weights)


def subgraph(g, vs):
    """Induced subgraph on the vertex set `vs` (labels and weights restricted)."""
    vs = frozenset(vs)
    edges = [e for e in g.edges if e[0] in vs and e[1] in vs]
    labels = None
    if g.vertex_labels:
        labels = {v: l for v, l in g.vertex_labels.items() if v in vs}
    vw = {v: g.vertex_weights[v] for v in vs} if g.vertex_weights else None
    ew = {e: g.edge_weights[e] for e in edges} if g.edge_weights else None
    return Graph(vs, edges, vertex_labels=labels, vertex_weights=vw, edge_weights=ew)


def connected_components(g):
    """List of vertex sets, one per component, each sorted-by-min first."""
    seen = set()
    comps = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g):
    return len(connected_components(g)) <= 1


@dataclass(frozen=True)
class TwoColouring:
    """Proper 2-colouring, colours in {1, 2}, total on the coloured set."""
    colour: dict

    def classes(self):
        one = frozenset(v for v, c in self.colour.items() if c == 1)
        two = frozenset(v for v, c in self.colour.items() if c == 2)
        return one, two


@dataclass(frozen=True)
class OddCycle:
    """Simple cycle of odd length, as a vertex sequence (not repeated at the end)."""
    cycle: tuple

    def __len__(self):
        return len(self.cycle)


def bipartition_or_odd_cycle(g):
    """Either a proper 2-colouring of every component or one odd cycle.

    BFS colouring; the first conflicting edge closes an odd cycle through
    the BFS tree, which is returned as a witness.
    """
    colour = {}
    parent = {}
    depth = {}
    for start in sorted(g.vertices):
        if start in colour:
            continue
        colour[start] = 1
        parent[start] = None
        depth[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in sorted(g.neighbors(u)):
                if w not in colour:
                    colour[w] = 3 - colour[u]
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return OddCycle(_tree_cycle(u, w, parent, depth))
    return TwoColouring(colour)


def _tree_cycle(u, v, parent, depth):
    """Cycle through tree paths from u and v up to their LCA, plus edge uv."""
    pu, pv = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pv.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        pu.append(a)
        pv.append(b)
    # pu ends at the LCA, pv ends one step before it
    cycle = pu + pv[-2::-1]
    assert len(cycle) % 2 == 1
    return tuple(cycle)


def is_bipartite(g):
    return isinstance(bipartition_or_odd_cycle(g), TwoColouring)


def torso(g, x):
    """Induced graph on `x` with the neighbourhood of every outside
    component completed to a clique."""
    x = frozenset(x)
    if not x <= g.vertices:
        raise ValueError("torso set is not a subset of the vertex set")
    edges = {e for e in g.edges if e[0] in x and e[1] in x}
    outside = g.vertices - x
    seen = set()
    for start in outside:
        if start in seen:
            continue
        comp = {start}
        boundary = set()
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in x:
                    boundary.add(w)
                elif w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        bl = sorted(boundary)
        for i, u in enumerate(bl):
            for v in bl[i + 1:]:
                edges.add(edge_key(u, v))
    return Graph(x, edges)


def to_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def is_planar(g, certificate=False):
    """Planarity test.  With `certificate=True` also return the witness:
    a rotation system {v: cyclic neighbour list} when planar, otherwise a
    Kuratowski subgraph as an edge list."""
    h = to_networkx(g)
    planar, embedding = nx.check_planarity(h, counterexample=False)
    if not certificate:
        return planar
    if planar:
        rotation = {v: list(embedding.neighbors_cw_order(v)) for v in g.vertices}
        return True, rotation
    witness = nx.algorithms.planarity.get_counterexample(h)
    return False, sorted(edge_key(u, v) for u, v in witness.edges())


@dataclass(frozen=True)
class SeparatingVertex:
    """Negative answer of two_disjoint_paths: a cut of size <= 1.

    `vertex` is None only when sources or targets are empty or lie in
    different components.
    """
    vertex: int | None


def two_disjoint_paths(g, sources, targets):
    """Two vertex-disjoint paths from `sources` to `targets`, or a separator.

    Menger via unit vertex capacities (edge arcs uncapacitated); at most two
    augmenting searches.  Paths may be trivial (a single vertex lying in both
    sets).  Returns a pair of vertex lists, or SeparatingVertex on failure.
    """
    sources = frozenset(sources)
    targets = frozenset(targets)
    if not sources or not targets:
        return SeparatingVertex(None)
    if sources == targets and len(sources) == 1:
        (s,) = sources
        return [s], [s]

    # Split digraph: node ('in', v) -> ('out', v) carries the vertex
    # capacity, arcs ('out', u) -> ('in', v) along edges are uncapacitated.
    # A singleton endpoint set leaves its vertex uncapacitated so the two
    # paths may share it (internally disjoint semantics).
    def cap(v):
        if len(sources) == 1 and v in sources:
            return 2
        if len(targets) == 1 and v in targets:
            return 2
        return 1

    vflow = {}                     # vertex -> units through its arc
    eflow = {}                     # directed edge arc (u, v) -> units

    def residual(node):
        kind, v = node
        if kind == "in":
            if vflow.get(v, 0) < cap(v):
                yield ("out", v), ("vertex", v), False
            for u in sorted(g.neighbors(v)):
                if eflow.get((u, v), 0) > 0:
                    yield ("out", u), ("edge", u, v), True
        else:
            if vflow.get(v, 0) > 0:
                yield ("in", v), ("vertex", v), True
            for u in sorted(g.neighbors(v)):
                if eflow.get((v, u), 0) < 1:
                    yield ("in", u), ("edge", v, u), False

    def augment():
        prev = {}
        queue = deque()
        for s in sorted(sources):
            prev[("in", s)] = None
            queue.append(("in", s))
        reached = None
        while queue:
            node = queue.popleft()
            if node[0] == "out" and node[1] in targets:
                reached = node
                break
            for nxt, arc, is_reverse in residual(node):
                if nxt not in prev:
                    prev[nxt] = (node, arc, is_reverse)
                    queue.append(nxt)
        if reached is not None:
            node = reached
            while prev[node] is not None:
                _, arc, is_reverse = prev[node]
                delta = -1 if is_reverse else 1
                if arc[0] == "vertex":
                    vflow[arc[1]] = vflow.get(arc[1], 0) + delta
                else:
                    key = (arc[1], arc[2])
                    eflow[key] = eflow.get(key, 0) + delta
                node = prev[node][0]
        return prev, reached

    value = 0
    reachable = None
    for _ in range(2):
        reachable, reached = augment()
        if reached is None:
            break
        value += 1
    if value >= 2:
        return _extract_two_paths(g, vflow, eflow, sources, targets)
    if value == 0:
        return SeparatingVertex(None)
    # the min cut has size 1; it usually sits on a vertex arc, or else on a
    # saturated edge arc between the two uncapacitated endpoints, in which
    # case deleting either endpoint separates the sets
    for v in sorted(g.vertices):
        if ("in", v) in reachable and ("out", v) not in reachable:
            return SeparatingVertex(v)
    for (u, v), units in sorted(eflow.items()):
        if units > 0 and ("out", u) in reachable and ("in", v) not in reachable:
            return SeparatingVertex(u)
    raise AssertionError("unit flow without a cut")


def _extract_two_paths(g, vflow, eflow, sources, targets):
    arcs = {a: c for a, c in eflow.items() if c > 0}

    def entered(v):
        return any(arcs.get((u, v), 0) > 0 for u in g.neighbors(v))

    starts = []
    for s in sorted(sources):
        units = vflow.get(s, 0) - (1 if entered(s) else 0)
        starts.extend([s] * max(0, units))
    paths = []
    for s in starts[:2]:
        path = [s]
        while True:
            v = path[-1]
            nxt = None
            for u in sorted(g.neighbors(v)):
                if arcs.get((v, u), 0) > 0:
                    nxt = u
                    break
            if nxt is None:
                break
            arcs[(v, nxt)] -= 1
            path.append(nxt)
        paths.append(path)
    assert len(paths) == 2
    assert paths[0][-1] in targets and paths[1][-1] in targets
    shared = set(paths[0]) & set(paths[1])
    allowed = set()
    if len(sources) == 1:
        allowed |= sources
    if len(targets) == 1:
        allowed |= targets
    assert shared <= allowed
    return paths[0], paths[1]


def parse_edge_list(text):
    """Parse the plain text graph format.

    First non-comment line is "n m"; then m lines "u v [w]".  Lines starting
    with '#' are comments.  Vertices are 0..n-1 plus any listed endpoints;
    a third column makes the graph edge-weighted (all lines must carry it).
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"header must be 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    weights = {}
    weighted = None
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise ValueError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        has_w = len(parts) == 3
        if weighted is None:
            weighted = has_w
        elif weighted != has_w:
            raise ValueError("mixed weighted and unweighted edge lines")
        edges.append((u, v))
        if has_w:
            weights[edge_key(u, v)] = int(parts[2])
    return build_graph(edges, vertices=range(n),
                       edge_weights=weights if weighted else None)


def format_edge_list(g):
    """Inverse of parse_edge_list (weights written when present)."""
    out = [f"{len(g.vertices)} {len(g.edges)}"]
    for u, v in sorted(g.edges):
        if g.edge_weights is not None:
            out.append(f"{u} {v} {g.edge_weights[(u, v)]}")
        else:
            out.append(f"{u} {v}")
    return "\n".join(out) + "\n"
