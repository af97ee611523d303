"""Wall certificates: subdivision models of elementary walls inside a host
graph, with validation, cleanness, subwall extraction, detection, and the
inside-out rerouting that swaps a wall's perimeter with the central brick of
a smaller wall.

A certificate maps every vertex of the elementary wall (its lattice
coordinate) to a host vertex and every elementary edge to a host path; the
image is then a subdivision of the elementary wall by construction, which
`validate_wall` replays edge by edge.
"""

from functools import lru_cache

from .errors import BadParameter, BudgetExhausted, OrderTooSmall
from .generators import elementary_wall
from .graphs import Graph, edge_key, bipartition_or_odd_cycle, TwoColouring


@lru_cache(maxsize=None)
def elementary_structure(k):
    """Coordinate-level structure of the elementary k-wall."""
    g = elementary_wall(k)
    coords = frozenset(g.vertex_labels[v] for v in g.vertices)
    ids = {g.vertex_labels[v]: v for v in g.vertices}
    edges = frozenset(
        tuple(sorted((g.vertex_labels[u], g.vertex_labels[v])))
        for u, v in g.edges)
    adj = {c: set() for c in coords}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)

    rows = {}
    for i in range(1, k + 1):
        rows[i] = sorted((c for c in coords if c[0] == i), key=lambda c: c[1])
    columns = {}
    for j in range(1, k + 1):
        columns[j] = sorted((c for c in coords if c[1] in (2 * j - 1, 2 * j)))

    peri_vertices = set(rows[1]) | set(rows[k]) | set(columns[1]) | set(columns[k])
    peri_edges = set()
    for part in (rows[1], rows[k], columns[1], columns[k]):
        ps = set(part)
        for a, b in edges:
            if a in ps and b in ps:
                peri_edges.add((a, b))
    cycle = _walk_cycle(peri_vertices, peri_edges)

    corners = (rows[1][0], rows[1][-1], rows[k][0], rows[k][-1])

    brick = None
    if k % 2 == 0:
        half = k // 2
        c0 = 2 * half if half % 2 == 1 else 2 * half - 1
        brick_coords = [(half, c0), (half, c0 + 1), (half, c0 + 2),
                        (half + 1, c0 + 2), (half + 1, c0 + 1), (half + 1, c0)]
        for a, b in zip(brick_coords, brick_coords[1:] + brick_coords[:1]):
            assert tuple(sorted((a, b))) in edges, (k, a, b)
        brick = tuple(brick_coords)

    degree = {c: len(adj[c]) for c in coords}
    return {
        "order": k,
        "coords": coords,
        "edges": edges,
        "adj": {c: frozenset(ns) for c, ns in adj.items()},
        "rows": rows,
        "columns": columns,
        "perimeter_cycle": cycle,
        "perimeter_edges": frozenset(peri_edges),
        "corners": corners,
        "central_brick": brick,
        "degree": degree,
    }


def _walk_cycle(vertices, edges):
    adj = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for v, ns in adj.items():
        assert len(ns) == 2, f"perimeter vertex {v} has degree {len(ns)}"
    start = min(vertices)
    cycle = [start]
    prev = None
    while True:
        nxt = [u for u in sorted(adj[cycle[-1]]) if u != prev]
        prev = cycle[-1]
        cycle.append(nxt[0])
        if cycle[-1] == start:
            cycle.pop()
            break
    assert len(cycle) == len(vertices)
    return tuple(cycle)


class Wall:
    """Subdivision model of the elementary `order`-wall in some host graph.

    branch_map: coordinate -> host vertex (total on all wall coordinates).
    path_map: sorted coordinate pair -> host vertex tuple, endpoints
    included and matching branch_map.
    """

    def __init__(self, order, branch_map, path_map):
        self.order = order
        self.branch_map = dict(branch_map)
        self.path_map = {tuple(sorted(e)): tuple(p) for e, p in path_map.items()}

    def structure(self):
        return elementary_structure(self.order)

    def host_vertices(self):
        out = set(self.branch_map.values())
        for p in self.path_map.values():
            out.update(p)
        return frozenset(out)

    def host_edges(self):
        out = set()
        for p in self.path_map.values():
            for a, b in zip(p, p[1:]):
                out.add(edge_key(a, b))
        return frozenset(out)

    def branch_hosts(self):
        """Images of the degree-three wall vertices."""
        deg = self.structure()["degree"]
        return frozenset(self.branch_map[c] for c in self.branch_map
                         if deg[c] == 3)

    def corner_hosts(self):
        return tuple(self.branch_map[c] for c in self.structure()["corners"])

    def host_path(self, a, b):
        """Host path of the elementary edge (a, b), oriented a -> b."""
        p = self.path_map[tuple(sorted((a, b)))]
        if p[0] == self.branch_map[a]:
            return p
        return tuple(reversed(p))

    def cycle_hosts(self, coord_cycle):
        """Host cycle of a coordinate cycle, as a vertex list."""
        out = []
        n = len(coord_cycle)
        for i in range(n):
            seg = self.host_path(coord_cycle[i], coord_cycle[(i + 1) % n])
            out.extend(seg[:-1])
        return out

    def perimeter_hosts(self):
        return self.cycle_hosts(self.structure()["perimeter_cycle"])

    def central_brick_hosts(self):
        brick = self.structure()["central_brick"]
        if brick is None:
            raise BadParameter("central brick is defined for even order only")
        return self.cycle_hosts(brick)

    def to_json(self):
        return {
            "order": self.order,
            "branch_map": [[list(c), v] for c, v in sorted(self.branch_map.items())],
            "path_map": [[[list(a), list(b)], list(p)]
                         for (a, b), p in sorted(self.path_map.items())],
        }

    @classmethod
    def from_json(cls, data):
        bm = {tuple(c): v for c, v in data["branch_map"]}
        pm = {(tuple(a), tuple(b)): tuple(p) for (a, b), p in data["path_map"]}
        return cls(data["order"], bm, pm)

    def __repr__(self):
        return f"Wall(order={self.order}, host_vertices={len(self.host_vertices())})"


class WallViolation(Exception):
    def __init__(self, reason, witness=None):
        super().__init__(reason if witness is None else f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness


def validate_wall(g, w):
    """None when `w` is a valid wall certificate inside `g`, else a
    WallViolation describing the failed invariant."""
    try:
        st = w.structure()
    except BadParameter as exc:
        return WallViolation("bad order", str(exc))
    if set(w.branch_map) != set(st["coords"]):
        return WallViolation("branch_map keys differ from wall coordinates")
    if set(w.path_map) != set(st["edges"]):
        return WallViolation("path_map keys differ from wall edges")
    images = list(w.branch_map.values())
    if len(set(images)) != len(images):
        seen = set()
        dup = next(v for v in images if v in seen or seen.add(v))
        return WallViolation("branch images not distinct", dup)
    if not set(images) <= g.vertices:
        return WallViolation("branch image outside host")
    interior_seen = {}
    image_set = set(images)
    for (a, b), p in w.path_map.items():
        if len(p) < 2:
            return WallViolation("path too short", (a, b))
        if {p[0], p[-1]} != {w.branch_map[a], w.branch_map[b]}:
            return WallViolation("path endpoints do not match images", (a, b))
        if len(set(p)) != len(p):
            return WallViolation("path repeats a vertex", (a, b))
        for x, y in zip(p, p[1:]):
            if not g.has_edge(x, y):
                return WallViolation("path step is not a host edge", (x, y))
        for v in p[1:-1]:
            if v in image_set:
                return WallViolation("path interior hits a branch image",
                                     ((a, b), v))
            if v in interior_seen:
                return WallViolation("paths share an interior vertex",
                                     ((a, b), interior_seen[v], v))
            interior_seen[v] = (a, b)
    return None


def is_clean(g, w):
    """A wall is clean when its host image admits a proper 2-colouring with
    every degree-three vertex and every corner in one colour class."""
    verts = w.host_vertices()
    edges = w.host_edges()
    image = Graph(verts, edges)
    col = bipartition_or_odd_cycle(image)
    if not isinstance(col, TwoColouring):
        return False
    special = set(w.branch_hosts()) | set(w.corner_hosts())
    return len({col.colour[v] for v in special}) == 1


def subwall_windows(order, k):
    """Top-left positions (row, wall-column) of candidate k-subwall windows."""
    return [(r0, c0)
            for r0 in range(1, order - k + 2)
            for c0 in range(1, order - k + 2)]


def extract_subwall(w, k, window):
    """Sub-Wall of order k at `window` = (first row, first wall-column),
    or None when the window does not carve an exact k-wall.

    The subwall keeps whole rows r0..r0+k-1 restricted to wall-columns
    c0..c0+k-1; its own canonical coordinates are matched row by row,
    mirroring horizontally when the window's brick parity is flipped.
    """
    st = w.structure()
    r0, c0 = window
    if r0 + k - 1 > w.order or c0 + k - 1 > w.order:
        return None
    lo, hi = 2 * c0 - 1, 2 * (c0 + k - 1)
    region = {c for c in st["coords"]
              if r0 <= c[0] <= r0 + k - 1 and lo <= c[1] <= hi}
    redges = {(a, b) for a, b in st["edges"] if a in region and b in region}
    # strip degree-one vertices, as the elementary construction does
    while True:
        deg = {c: 0 for c in region}
        for a, b in redges:
            deg[a] += 1
            deg[b] += 1
        drop = {c for c, d in deg.items() if d <= 1}
        if not drop:
            break
        region -= drop
        redges = {(a, b) for a, b in redges if a not in drop and b not in drop}
    target = elementary_structure(k)
    for mirror in (False, True):
        mapping = _match_rows(target, region, redges, r0, mirror)
        if mapping is not None:
            bm = {c: w.branch_map[mapping[c]] for c in target["coords"]}
            pm = {}
            for a, b in target["edges"]:
                pa, pb = mapping[a], mapping[b]
                host = w.host_path(pa, pb)
                pm[(a, b)] = host
            return Wall(k, bm, pm)
    return None


def _match_rows(target, region, redges, r0, mirror):
    """Coordinate bijection target k-wall -> window region, aligning row i
    with region row r0+i-1 in j-order (reversed when mirrored)."""
    mapping = {}
    for i in range(1, target["order"] + 1):
        mine = target["rows"][i]
        theirs = sorted((c for c in region if c[0] == r0 + i - 1),
                        key=lambda c: c[1], reverse=mirror)
        if len(mine) != len(theirs):
            return None
        for a, b in zip(mine, theirs):
            mapping[a] = b
    for a, b in target["edges"]:
        e = tuple(sorted((mapping[a], mapping[b])))
        if e not in redges:
            return None
    return mapping


def find_clean_subwall(g, w, k):
    """First clean k-subwall in row-major window order, or None."""
    if w.order < k:
        raise OrderTooSmall(f"wall order {w.order} below target {k}")
    for window in subwall_windows(w.order, k):
        sub = extract_subwall(w, k, window)
        if sub is not None and is_clean(g, sub):
            return sub
    return None


def identity_wall(k):
    """Host graph = the elementary k-wall itself, plus its trivial
    certificate (every path a single edge)."""
    g = elementary_wall(k)
    ids = {g.vertex_labels[v]: v for v in g.vertices}
    st = elementary_structure(k)
    bm = {c: ids[c] for c in st["coords"]}
    pm = {(a, b): (ids[a], ids[b]) for a, b in st["edges"]}
    return g, Wall(k, bm, pm)


def build_subdivided_wall(k, times=1, base=0):
    """Host graph that is the elementary k-wall with every edge subdivided
    `times` times, plus its certificate.  Paths then have length times+1,
    so odd `times` gives a clean wall.  Vertex ids start at `base`."""
    st = elementary_structure(k)
    ids = {}
    for c in sorted(st["coords"]):
        ids[c] = base + len(ids)
    edges = []
    pm = {}
    nxt = base + len(ids)
    for a, b in sorted(st["edges"]):
        chain = [ids[a]]
        for _ in range(times):
            chain.append(nxt)
            nxt += 1
        chain.append(ids[b])
        edges.extend(zip(chain, chain[1:]))
        pm[(a, b)] = tuple(chain)
    g = Graph(range(base, nxt), edges)
    return g, Wall(k, {c: ids[c] for c in st["coords"]}, pm)


def attach_path(g, u, v, length):
    """New host equal to `g` plus a fresh u-v path of `length` edges;
    returns (graph, path-vertex-tuple)."""
    if length < 1:
        raise BadParameter("path needs at least one edge")
    nxt = max(g.vertices) + 1
    chain = [u] + list(range(nxt, nxt + length - 1)) + [v]
    edges = set(g.edges) | {edge_key(a, b) for a, b in zip(chain, chain[1:])}
    return Graph(set(g.vertices) | set(chain), edges), tuple(chain)


def _oriented_ring(cycle):
    """Clockwise orientation: the successor of the minimal (top-left)
    element is its rightward same-row neighbour."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    cycle = cycle[i:] + cycle[:i]
    r, c = cycle[0]
    if cycle[1] == (r, c + 1):
        return cycle
    flipped = [cycle[0]] + list(reversed(cycle[1:]))
    assert flipped[1] == (r, c + 1), "ring has no rightward successor"
    return flipped


def _window_region(st, r0, c0, order):
    """Region coords and edges of the subwall window, degree-one stripped."""
    lo, hi = 2 * c0 - 1, 2 * (c0 + order - 1)
    region = {c for c in st["coords"]
              if r0 <= c[0] <= r0 + order - 1 and lo <= c[1] <= hi}
    redges = {(a, b) for a, b in st["edges"] if a in region and b in region}
    while True:
        deg = {c: 0 for c in region}
        for a, b in redges:
            deg[a] += 1
            deg[b] += 1
        drop = {c for c, d in deg.items() if d <= 1}
        if not drop:
            break
        region -= drop
        redges = {e for e in redges if e[0] not in drop and e[1] not in drop}
    return region, redges


def _window_ring(st, level):
    """Perimeter cycle (clockwise coord list) of the concentric subwall of
    `st` at depth `level`."""
    order = st["order"] - 2 * level
    if order < 3:
        raise OrderTooSmall(
            f"no concentric subwall of order {order} at depth {level}")
    region, redges = _window_region(st, level + 1, level + 1, order)
    target = elementary_structure(order)
    for mirror in (False, True):
        mapping = _match_rows(target, region, redges, level + 1, mirror)
        if mapping is not None:
            cyc = [mapping[c] for c in target["perimeter_cycle"]]
            return _oriented_ring(cyc)
    raise OrderTooSmall(f"window at depth {level} is not a subwall")


def target_onion(t):
    """Layered view of the elementary t-wall around its central brick:
    the brick cycle, the two joint vertices beside it, concentric layer
    cycles, and the edges between consecutive layers."""
    if t % 2 != 0 or t < 4:
        raise BadParameter("inside-out targets have even order >= 4")
    st = elementary_structure(t)
    half = t // 2
    brick = list(st["central_brick"])
    layers = {}
    for depth in range(1, half):
        layers[depth] = _window_ring(st, half - 1 - depth)
    covered = set(brick)
    for cyc in layers.values():
        covered |= set(cyc)
    leftover = sorted(set(st["coords"]) - covered)
    joints = [c for c in leftover if st["degree"][c] == 3]
    passers = {c for c in leftover if st["degree"][c] == 2}
    assert len(joints) + len(passers) == len(leftover)
    layer_of = {}
    for c in brick:
        layer_of[c] = 0
    for depth, cyc in layers.items():
        for c in cyc:
            assert c not in layer_of, (t, c)
            layer_of[c] = depth
    cycle_edges = set()
    for cyc in [brick] + list(layers.values()):
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            cycle_edges.add(tuple(sorted((a, b))))
    # radial chains: maximal paths through leftover degree-2 vertices joining
    # anchors (cycle vertices or joints)
    anchors = set(layer_of) | set(joints)
    chains = []
    seen = set()
    for a in sorted(anchors):
        nbrs = sorted(st["adj"][a]) if a in joints else sorted(
            n for n in st["adj"][a]
            if tuple(sorted((a, n))) not in cycle_edges)
        for n in nbrs:
            if (a, n) in seen:
                continue
            chain = [a, n]
            prev = a
            while chain[-1] in passers:
                nxts = [x for x in st["adj"][chain[-1]] if x != prev]
                assert len(nxts) == 1
                prev = chain[-1]
                chain.append(nxts[0])
            for x, y in zip(chain, chain[1:]):
                seen.add((x, y))
                seen.add((y, x))
            assert chain[-1] in anchors, chain
            chains.append(tuple(chain))

    # each joint hangs one chain toward the inner layer and two outward
    joint_info = {}
    for j in joints:
        mine = [ch for ch in chains if j in (ch[0], ch[-1])]
        mine = [ch if ch[0] == j else tuple(reversed(ch)) for ch in mine]
        assert len(mine) == 3, (j, mine)
        ends = [ch[-1] for ch in mine]
        assert all(e in layer_of for e in ends), (j, ends)
        depths = sorted(layer_of[e] for e in ends)
        assert depths[0] == depths[1] - 1 == depths[2] - 1, (j, depths)
        down = [ch for ch in mine if layer_of[ch[-1]] == depths[0]]
        ups = [ch for ch in mine if layer_of[ch[-1]] == depths[2]]
        assert len(down) == 1 and len(ups) == 2, (j, mine)
        joint_info[j] = {"depth": depths[0], "down": down[0], "ups": ups}

    interfaces = {d: {"channels": [], "joints": []} for d in range(half - 1)}
    for ch in chains:
        a, b = ch[0], ch[-1]
        if a in joint_info or b in joint_info:
            continue
        la, lb = layer_of[a], layer_of[b]
        assert abs(la - lb) == 1, (ch, la, lb)
        lo = min(la, lb)
        interfaces[lo]["channels"].append(ch if la < lb else tuple(reversed(ch)))
    for j, info in joint_info.items():
        interfaces[info["depth"]]["joints"].append(
            {"joint": j, "down": info["down"], "ups": info["ups"]})
    return {
        "order": t,
        "brick": brick,
        "layers": layers,
        "layer_of": layer_of,
        "interfaces": interfaces,
        "structure": st,
    }
