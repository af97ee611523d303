import sys, time
sys.setrecursionlimit(100000)
from oddminors.generators import grid

def masks_of(g):
    order = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for u, v in g.edges:
        adj[idx[u]] |= 1 << idx[v]
        adj[idx[v]] |= 1 << idx[u]
    return order, adj

def bits(x):
    while x:
        b = x & -x
        yield b.bit_length() - 1
        x ^= b

def decide(adj, n, k):
    """Elimination order with every fill-degree <= k? Returns order or None."""
    full = (1 << n) - 1
    dead = set()

    def filldeg(v, S):
        # vertices reachable from v through eliminated set S
        reach = adj[v]
        frontier = reach & S
        seen_elim = frontier
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= adj[u]
            reach |= grow
            frontier = (reach & S) & ~seen_elim
            seen_elim |= frontier
        reach &= ~S
        reach &= ~(1 << v)
        return reach

    def neighbors_clique(v, S, reach):
        for u in bits(reach):
            ru = filldeg(u, S)
            if (reach & ~(1 << u)) & ~ru:
                return False
        return True

    sys_stack = []
    def dfs(S):
        if S == full:
            return []
        if S in dead:
            return None
        # compute candidates
        cands = []
        for v in range(n):
            if S >> v & 1:
                continue
            r = filldeg(v, S)
            d = bin(r).count("1")
            if d <= k:
                cands.append((d, v, r))
        if not cands:
            dead.add(S)
            return None
        # reductions: simplicial or degree<=2 -> eliminate immediately
        for d, v, r in cands:
            if d <= 2 or neighbors_clique(v, S, r):
                sub = dfs(S | (1 << v))
                if sub is not None:
                    return [v] + sub
                dead.add(S)
                return None
        cands.sort()
        for d, v, r in cands:
            sub = dfs(S | (1 << v))
            if sub is not None:
                return [v] + sub
        dead.add(S)
        return None

    res = dfs(0)
    return res, len(dead)

g = grid(5, 5)
order, adj = masks_of(g)
n = len(order)
for k in (3, 4, 5):
    t0 = time.time()
    res, states = decide(adj, n, k)
    print(f"k={k}: {'YES' if res is not None else 'no'} states={states} time={time.time()-t0:.2f}s")
