"""Parametric graph families used as fixtures and planted instances.

All generators label vertices with lattice coordinates (1-based (row, col)
tuples); subdivision vertices get the string labels "x" and "y".  Vertex ids
are dense and assigned in sorted label order, so identical parameters always
produce identical graphs.
"""

from .errors import BadParameter
from .graphs import Graph, edge_key


def _grid_cells(n, m):
    return [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]


def _grid_edges(n, m):
    for i in range(1, n + 1):
        for j in range(1, m):
            yield (i, j), (i, j + 1)
    for i in range(1, n):
        for j in range(1, m + 1):
            yield (i, j), (i + 1, j)


def _from_coords(coords, coord_edges):
    ids = {c: k for k, c in enumerate(sorted(coords))}
    edges = [(ids[a], ids[b]) for a, b in coord_edges]
    labels = {k: c for c, k in ids.items()}
    return Graph(ids.values(), edges, vertex_labels=labels)


def grid(n, m):
    """The n-by-m grid on vertex set [n] x [m]."""
    if n < 1 or m < 1:
        raise BadParameter("grid needs n, m >= 1")
    return _from_coords(_grid_cells(n, m), _grid_edges(n, m))


def elementary_wall(k):
    """Elementary wall of order k.

    Start from the (k x 2k) grid, keep a vertical edge (i,j)-(i+1,j) only
    when i+j is odd, then repeatedly strip degree-one vertices.
    """
    if k < 3:
        raise BadParameter("walls need order k >= 3")
    coords = set(_grid_cells(k, 2 * k))
    edges = set()
    for (a, b) in _grid_edges(k, 2 * k):
        if a[0] == b[0]:
            edges.add((a, b))
        elif (a[0] + a[1]) % 2 == 1:
            edges.add((a, b))
    while True:
        deg = {c: 0 for c in coords}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        drop = {c for c, d in deg.items() if d <= 1}
        if not drop:
            break
        coords -= drop
        edges = {(a, b) for a, b in edges if a not in drop and b not in drop}
    return _from_coords(coords, edges)


def _centre_diagonals(k):
    main = ((k, k), (k + 1, k + 1))
    anti = ((k, k + 1), (k + 1, k))
    return main, anti


def spb_grid(k):
    """(2k x 2k) grid plus the single parity-breaking edge in the centre face."""
    if k < 2:
        raise BadParameter("spb_grid needs k >= 2; the k=1 centre edge degenerates")
    n = 2 * k
    main, _ = _centre_diagonals(k)
    coords = _grid_cells(n, n)
    edges = list(_grid_edges(n, n)) + [main]
    return _from_coords(coords, edges)


def single_crossing_grid(k):
    """(2k x 2k) grid plus a plain cross in the centre face."""
    if k < 2:
        raise BadParameter("single_crossing_grid needs k >= 2")
    n = 2 * k
    main, anti = _centre_diagonals(k)
    coords = _grid_cells(n, n)
    edges = list(_grid_edges(n, n)) + [main, anti]
    return _from_coords(coords, edges)


def parity_crossing_grid(i, k):
    """(2k x 2k) grid plus a centre cross carrying a parity break.

    Variant 1 adds both diagonals of the centre face.  Variant 2 subdivides
    the anti-diagonal with a vertex x.  Variant 3 subdivides both diagonals
    (y on the main one, x on the anti one) and joins x to (k+1, k+1).
    """
    if i not in (1, 2, 3):
        raise BadParameter("variant must be 1, 2 or 3")
    if k < 2:
        raise BadParameter("parity_crossing_grid needs k >= 2")
    n = 2 * k
    main, anti = _centre_diagonals(k)
    coords = _grid_cells(n, n)
    edges = list(_grid_edges(n, n))
    if i == 1:
        edges += [main, anti]
    elif i == 2:
        edges += [main, (anti[0], "x"), ("x", anti[1])]
        coords = coords + ["x"]
    else:
        edges += [(main[0], "y"), ("y", main[1]),
                  (anti[0], "x"), ("x", anti[1]),
                  ("x", (k + 1, k + 1))]
        coords = coords + ["x", "y"]
    ids = {}
    grid_coords = sorted(c for c in coords if isinstance(c, tuple))
    extra = sorted(c for c in coords if isinstance(c, str))
    for c in grid_coords + extra:
        ids[c] = len(ids)
    labels = {v: c for c, v in ids.items()}
    return Graph(ids.values(), [(ids[a], ids[b]) for a, b in edges],
                 vertex_labels=labels)


def coord_index(g):
    """Inverse of the generator label map: coordinate/label -> vertex id."""
    if not g.vertex_labels:
        raise ValueError("graph carries no labels")
    return {c: v for v, c in g.vertex_labels.items()}


def tagged_edges(g):
    """Edges added on top of the plain grid: centre diagonals and the
    edges incident to the subdivision vertices x and y."""
    special = []
    for u, v in sorted(g.edges):
        a, b = g.vertex_labels[u], g.vertex_labels[v]
        if isinstance(a, str) or isinstance(b, str):
            special.append((u, v))
        elif abs(a[0] - b[0]) == 1 and abs(a[1] - b[1]) == 1:
            special.append((u, v))
    return special


def parity_edge(g):
    """The main-diagonal centre edge of an spb (or crossing) grid."""
    for u, v in sorted(g.edges):
        a, b = g.vertex_labels[u], g.vertex_labels[v]
        if isinstance(a, str) or isinstance(b, str):
            continue
        if a[0] != b[0] and a[1] != b[1] and a[0] == a[1] and b[0] == b[1]:
            return edge_key(u, v)
    raise ValueError("graph has no parity-breaking centre edge")


FAMILIES = {
    "grid": (grid, 2),
    "wall": (elementary_wall, 1),
    "spb": (spb_grid, 1),
    "ucross": (single_crossing_grid, 1),
    "pcross": (parity_crossing_grid, 2),
}


def generate(family, params):
    """Dispatch by family name; `params` is a list of integers."""
    if family not in FAMILIES:
        raise BadParameter(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    fn, arity = FAMILIES[family]
    if len(params) != arity:
        raise BadParameter(f"family {family!r} takes {arity} parameter(s)")
    return fn(*params)
