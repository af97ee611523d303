"""Exact small-instance treewidth, greedy elimination heuristics, and nice
tree-decomposition conversion.

The exact solver decides "width <= k?" by depth-first search over elimination
prefixes.  The fill graph after eliminating a set depends only on the set,
so failed prefixes are memoised as bitmasks.  Simplicial vertices and
vertices of (fill-)degree at most two are eliminated without branching.
"""

import sys

from .errors import TooLarge, BudgetExhausted, BadParameter
from .decomposition import TreeDecomposition
from .graphs import connected_components, subgraph

sys.setrecursionlimit(100_000)


def _bit_indices(x):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b


def _adjacency_masks(g):
    order = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    return order, adj


def _fill_reach(adj, v, eliminated):
    """Bitmask of live vertices adjacent to v in the fill graph, i.e.
    reachable from v through eliminated vertices."""
    reach = adj[v]
    seen = reach & eliminated
    frontier = seen
    while frontier:
        grow = 0
        for u in _bit_indices(frontier):
            grow |= adj[u]
        reach |= grow
        frontier = (reach & eliminated) & ~seen
        seen |= frontier
    return reach & ~eliminated & ~(1 << v)


def _decide_width(adj, n, k, budget):
    """Elimination order with all fill-degrees <= k, or None.  Counts
    visited states against `budget`."""
    full = (1 << n) - 1
    dead = set()
    spent = [0]

    def dfs(S):
        if S == full:
            return []
        if S in dead:
            return None
        spent[0] += 1
        if spent[0] > budget:
            raise BudgetExhausted(f"width search exceeded {budget} states")
        cands = []
        for v in range(n):
            if S >> v & 1:
                continue
            r = _fill_reach(adj, v, S)
            d = r.bit_count()
            if d <= k:
                cands.append((d, v, r))
        if not cands:
            dead.add(S)
            return None
        for d, v, r in cands:
            if d <= 2 or _is_clique(adj, S, r):
                sub = dfs(S | (1 << v))
                if sub is None:
                    dead.add(S)
                    return None
                return [v] + sub
        cands.sort()
        for d, v, r in cands:
            sub = dfs(S | (1 << v))
            if sub is not None:
                return [v] + sub
        dead.add(S)
        return None

    return dfs(0)


def _is_clique(adj, eliminated, members):
    for u in _bit_indices(members):
        if (members & ~(1 << u)) & ~_fill_reach(adj, u, eliminated):
            return False
    return True


def _minor_min_width(adj, n):
    """Contraction-based treewidth lower bound (minor-min-width)."""
    nbrs = {v: set(_bit_indices(adj[v])) for v in range(n)}
    best = 0
    alive = set(range(n))
    while alive:
        d, v = min((len(nbrs[v]), v) for v in alive)
        best = max(best, d)
        if d == 0:
            alive.discard(v)
            continue
        _, u = min((len(nbrs[u] & nbrs[v]), u) for u in nbrs[v])
        # contract v into u
        nbrs[u] |= nbrs[v]
        nbrs[u] -= {u, v}
        for w in nbrs[v]:
            nbrs[w].discard(v)
            if w != u:
                nbrs[w].add(u)
        del nbrs[v]
        alive.discard(v)
    return best


def elimination_order(g, strategy):
    """Greedy elimination order under `min_degree` or `min_fill`,
    tie-broken by vertex id."""
    if strategy not in ("min_degree", "min_fill"):
        raise BadParameter("strategy must be min_degree or min_fill")
    nbrs = {v: set(g.neighbors(v)) for v in sorted(g.vertices)}
    order = []
    while nbrs:
        if strategy == "min_degree":
            _, v = min((len(nbrs[v]), v) for v in nbrs)
        else:
            def fillin(v):
                vs = sorted(nbrs[v])
                return sum(1 for i, a in enumerate(vs) for b in vs[i + 1:]
                           if b not in nbrs[a])
            _, v = min((fillin(v), v) for v in nbrs)
        order.append(v)
        around = nbrs.pop(v)
        for a in around:
            nbrs[a].discard(v)
        vs = sorted(around)
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                nbrs[a].add(b)
                nbrs[b].add(a)
    return order


def decomposition_from_order(g, order):
    """Tree-decomposition whose bags are the elimination cliques of `order`."""
    if not g.vertices:
        return TreeDecomposition({0: frozenset()}, set())
    position = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(g.neighbors(v)) for v in g.vertices}
    bags = {}
    for i, v in enumerate(order):
        around = sorted(nbrs[v])
        bags[i] = frozenset([v] + around)
        for a in around:
            nbrs[a].discard(v)
        for x, a in enumerate(around):
            for b in around[x + 1:]:
                nbrs[a].add(b)
                nbrs[b].add(a)
    edges = set()
    for i, v in enumerate(order):
        later = [position[u] for u in bags[i] if position[u] > i]
        if later:
            edges.add((i, min(later)))
    td = TreeDecomposition(bags, edges)
    if not td.is_tree():
        # disconnected input: bridge the pieces deterministically
        seen = set()
        anchors = []
        for t in td.nodes:
            if t in seen:
                continue
            stack = [t]
            comp = {t}
            while stack:
                a = stack.pop()
                for b in td.neighbors(a):
                    if b not in comp:
                        comp.add(b)
                        stack.append(b)
            seen |= comp
            anchors.append(t)
        for a, b in zip(anchors, anchors[1:]):
            edges.add((a, b))
        td = TreeDecomposition(bags, edges)
    return td


def heuristic_decomposition(g, strategy="min_fill"):
    """Valid decomposition from a greedy elimination order; width is an
    upper bound on the treewidth."""
    return decomposition_from_order(g, elimination_order(g, strategy))


def exact_treewidth(g, budget=5_000_000, max_vertices=32):
    """Optimal width and a witnessing decomposition.

    Branch and bound per component over elimination prefixes, between a
    contraction lower bound and the min-fill upper bound.
    """
    if len(g.vertices) > max_vertices:
        raise TooLarge(f"exact treewidth accepts at most {max_vertices} vertices")
    if not g.vertices:
        return -1, TreeDecomposition({0: frozenset()}, set())
    comps = connected_components(g)
    if len(comps) > 1:
        best = 0
        orders = []
        for c in comps:
            k, order = _exact_component(subgraph(g, c), budget)
            best = max(best, k)
            orders.append(order)
        td = decomposition_from_order(g, [v for o in orders for v in o])
        return best, td
    k, order = _exact_component(g, budget)
    return k, decomposition_from_order(g, order)


def _exact_component(g, budget):
    order, adj = _adjacency_masks(g)
    n = len(order)
    heur = elimination_order(g, "min_fill")
    ub = _order_width(g, heur)
    lb = _minor_min_width(adj, n)
    for k in range(lb, ub):
        elim = _decide_width(adj, n, k, budget)
        if elim is not None:
            return k, [order[i] for i in elim]
    return ub, heur


def _order_width(g, order):
    nbrs = {v: set(g.neighbors(v)) for v in g.vertices}
    width = 0
    for v in order:
        around = sorted(nbrs[v])
        width = max(width, len(around))
        for a in around:
            nbrs[a].discard(v)
        for i, a in enumerate(around):
            for b in around[i + 1:]:
                nbrs[a].add(b)
                nbrs[b].add(a)
    return width


def make_nice(td, root=None):
    """Rooted decomposition where every node is a leaf (empty bag),
    introduce (adds one vertex), forget (drops one vertex), or join (two
    children with equal bags).  Width is preserved."""
    if root is None:
        root = min(td.bags)
    bags = {}
    edges = set()
    counter = [0]

    def fresh(bag):
        t = counter[0]
        counter[0] += 1
        bags[t] = frozenset(bag)
        return t

    def chain(top_bag, bottom_bag, bottom_node):
        """Introduce/forget chain from `top_bag` down to an existing node
        holding `bottom_bag`; returns the node holding `top_bag`."""
        cur_bag = set(bottom_bag)
        cur = bottom_node
        for v in sorted(bottom_bag - top_bag, reverse=True):
            cur_bag.discard(v)
            t = fresh(cur_bag)
            edges.add((t, cur))
            cur = t
        for v in sorted(top_bag - cur_bag):
            cur_bag.add(v)
            t = fresh(cur_bag)
            edges.add((t, cur))
            cur = t
        return cur

    def build(t, parent):
        children = [d for d in td.neighbors(t) if d != parent]
        bag = td.bags[t]
        if not children:
            leaf = fresh(frozenset())
            return chain(bag, frozenset(), leaf)
        tops = []
        for d in children:
            sub = build(d, t)
            tops.append(chain(bag, td.bags[d], sub))
        while len(tops) > 1:
            merged = []
            for i in range(0, len(tops) - 1, 2):
                j = fresh(bag)
                edges.add((j, tops[i]))
                edges.add((j, tops[i + 1]))
                merged.append(j)
            if len(tops) % 2 == 1:
                merged.append(tops[-1])
            tops = merged
        return tops[0]

    top = build(root, None)
    # drain the root bag so the root is a forget chain down to an empty bag
    cur = top
    cur_bag = set(td.bags[root])
    for v in sorted(cur_bag, reverse=True):
        cur_bag.discard(v)
        t = fresh(cur_bag)
        edges.add((t, cur))
        cur = t
    return TreeDecomposition(bags, edges, root=cur)


def node_kind(td, t, parent):
    """Classify a nice-decomposition node: leaf / introduce / forget / join."""
    children = [d for d in td.neighbors(t) if d != parent]
    if not children:
        return ("leaf",)
    if len(children) == 2:
        return ("join", children[0], children[1])
    (c,) = children
    mine, theirs = td.bags[t], td.bags[c]
    if len(mine) == len(theirs) + 1:
        (v,) = mine - theirs
        return ("introduce", v, c)
    if len(mine) == len(theirs) - 1:
        (v,) = theirs - mine
        return ("forget", v, c)
    raise ValueError(f"node {t} is not nice relative to child {c}")
