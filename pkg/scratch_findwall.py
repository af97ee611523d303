import time
from collections import deque
from oddminors.walls import (elementary_structure, Wall, validate_wall,
                             build_subdivided_wall, attach_path, identity_wall)
from oddminors.generators import grid
from oddminors.errors import BudgetExhausted
from oddminors.graphs import Graph, build_graph, is_bipartite


def pattern_core(st):
    deg = st["degree"]
    adj = st["adj"]
    core = sorted(c for c in st["coords"] if deg[c] == 3)
    core_set = set(core)
    chains = []
    seen = set()
    for c in core:
        for n in sorted(adj[c]):
            if (c, n) in seen:
                continue
            chain = [c, n]
            prev = c
            while chain[-1] not in core_set:
                nxts = [x for x in adj[chain[-1]] if x != prev]
                prev = chain[-1]
                chain.append(nxts[0])
            for x, y in zip(chain, chain[1:]):
                seen.add((x, y))
                seen.add((y, x))
            chains.append(tuple(chain))
    return core, chains


def host_chains(g):
    core = sorted(v for v in g.vertices if g.degree(v) >= 3)
    core_set = set(core)
    chains = []
    seen = set()
    for v in core:
        for n in sorted(g.neighbors(v)):
            if (v, n) in seen:
                continue
            chain = [v, n]
            prev = v
            ok = True
            while chain[-1] not in core_set:
                nxts = [x for x in sorted(g.neighbors(chain[-1])) if x != prev]
                if len(nxts) != 1:
                    ok = False
                    break
                prev = chain[-1]
                chain.append(nxts[0])
            for x, y in zip(chain, chain[1:]):
                seen.add((x, y))
                seen.add((y, x))
            if not ok or (chain[-1] == v and len(chain) > 2):
                continue
            chains.append(tuple(chain))
    return core, chains


def match_rigid(g, k, budget):
    """Embed the wall core into the host core mapping every pattern
    super-edge to exactly one host chain.  Fast and rigid; succeeds when the
    host is a subdivided wall, possibly hanging extra chains."""
    st = elementary_structure(k)
    pcore, pchains = pattern_core(st)
    hcore, hchains = host_chains(g)
    if len(hcore) < len(pcore):
        return None
    incid = {v: [] for v in hcore}
    for i, ch in enumerate(hchains):
        incid[ch[0]].append((ch[-1], i))
        if ch[0] != ch[-1]:
            incid[ch[-1]].append((ch[0], i))
    padj = {c: [] for c in pcore}
    for ch in pchains:
        padj[ch[0]].append((ch[-1], ch))
        padj[ch[-1]].append((ch[0], tuple(reversed(ch))))
    order = []
    placed = set()
    rest = sorted(pcore)
    order.append(rest.pop(0))
    placed.add(order[0])
    while rest:
        for idx, c in enumerate(rest):
            if any(n in placed for n, _ in padj[c]):
                order.append(rest.pop(idx))
                placed.add(c)
                break
        else:
            order.append(rest.pop(0))
            placed.add(order[-1])
    pos = {c: i for i, c in enumerate(order)}
    backs = {c: sorted(((n, ch) for n, ch in padj[c] if pos[n] < pos[c]),
                       key=lambda t: pos[t[0]]) for c in order}
    spent = [0]
    image = {}
    taken = set()
    used_chain = set()
    assignment = {}

    def charge():
        spent[0] += 1
        if spent[0] > budget:
            raise BudgetExhausted("rigid wall matching budget exhausted")

    def orient(i, start):
        ch = hchains[i]
        return ch if ch[0] == start else tuple(reversed(ch))

    def place(i):
        charge()
        if i == len(order):
            return True
        c = order[i]
        bk = backs[c]
        if not bk:
            for v in hcore:
                if v in taken:
                    continue
                image[c] = v
                taken.add(v)
                if place(i + 1):
                    return True
                taken.discard(v)
                del image[c]
            return False
        n1, chain1 = bk[0]
        anchor = image[n1]
        cands = []
        for nb, ci in sorted(incid[anchor]):
            if ci in used_chain or nb in taken or nb == anchor:
                continue
            if len(hchains[ci]) - 1 >= len(chain1) - 1:
                cands.append((len(hchains[ci]), nb, ci))
        cands.sort()
        for _, v, ci in cands:
            claims = {_ckey(chain1): orient(ci, anchor)}
            cset = {ci}
            ok = True
            for nb, chn in bk[1:]:
                got = None
                for nb2, cj in sorted(incid[image[nb]]):
                    if cj in used_chain or cj in cset:
                        continue
                    if nb2 == v and len(hchains[cj]) - 1 >= len(chn) - 1:
                        got = cj
                        break
                if got is None:
                    ok = False
                    break
                claims[_ckey(chn)] = orient(got, image[nb])
                cset.add(got)
            if not ok:
                continue
            image[c] = v
            taken.add(v)
            used_chain.update(cset)
            assignment.update(claims)
            if place(i + 1):
                return True
            for key in claims:
                del assignment[key]
            used_chain.difference_update(cset)
            taken.discard(v)
            del image[c]
        return False

    if not place(0):
        return None
    return _expand(k, pchains, image, assignment)


def _ckey(ch):
    return min(ch, tuple(reversed(ch)))


def _expand(k, pchains, image, assignment):
    bm = {}
    pm = {}
    for ch in pchains:
        hp = assignment[_ckey(ch)]
        if hp[0] != image[ch[0]]:
            hp = tuple(reversed(hp))
        L = len(ch) - 1
        M = len(hp) - 1
        assert M >= L
        cuts = list(range(L)) + [M]
        for t in range(L):
            seg = hp[cuts[t]:cuts[t + 1] + 1]
            bm[ch[t]] = seg[0]
            bm[ch[t + 1]] = seg[-1]
            pm[tuple(sorted((ch[t], ch[t + 1])))] = seg
    return Wall(k, bm, pm)


def match_with_strip(g, k, budget):
    """Rigid matching after deleting one chain whose interior removal makes
    the host bipartite (an attached odd ear breaks exactly one wall chain)."""
    if is_bipartite(g):
        return None
    _, chains = host_chains(g)
    for ch in chains:
        interior = set(ch[1:-1])
        keep = g.vertices - interior
        edges = [e for e in g.edges if e[0] in keep and e[1] in keep]
        if len(ch) == 2:
            edges = [e for e in edges if e != tuple(sorted(ch))]
        rest = Graph(keep, edges)
        if not is_bipartite(rest):
            continue
        got = match_rigid(rest, k, budget)
        if got is not None:
            return got
    return None


def find_wall_raw(g, k, budget):
    """Row-major backtracking over all wall coordinates with shortest-path
    routing; general but practical only for small orders."""
    st = elementary_structure(k)
    coords = sorted(st["coords"])
    adj = st["adj"]
    pos = {c: i for i, c in enumerate(coords)}
    backs = {c: sorted((n for n in adj[c] if pos[n] < pos[c]),
                       key=lambda n: pos[n]) for c in coords}
    spent = [0]
    used = set()
    image = {}
    paths = {}

    def charge(n=1):
        spent[0] += n
        if spent[0] > budget:
            raise BudgetExhausted("wall search budget exhausted")

    def candidates_near(a_host, mindeg, limit):
        prev = {a_host: None}
        dq = deque([a_host])
        out = []
        while dq and len(out) < limit:
            u = dq.popleft()
            charge()
            if u != a_host and u not in used and g.degree(u) >= mindeg:
                path = [u]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                out.append(tuple(reversed(path)))
            for v in sorted(g.neighbors(u)):
                if v in prev or v in used:
                    continue
                prev[v] = u
                dq.append(v)
        return out

    def route(a_host, b_host, extra_blocked):
        prev = {a_host: None}
        dq = deque([a_host])
        while dq:
            u = dq.popleft()
            charge()
            if u == b_host:
                path = [u]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return tuple(reversed(path))
            for v in sorted(g.neighbors(u)):
                if v in prev:
                    continue
                if v != b_host and (v in used or v in extra_blocked):
                    continue
                prev[v] = u
                dq.append(v)
        return None

    def place(i):
        if i == len(coords):
            return True
        c = coords[i]
        mindeg = st["degree"][c]
        bk = backs[c]
        if not bk:
            for v in sorted(g.vertices):
                if v in used or g.degree(v) < mindeg:
                    continue
                image[c] = v
                used.add(v)
                if place(i + 1):
                    return True
                used.discard(v)
                del image[c]
            return False
        anchor = image[bk[0]]
        for acc in candidates_near(anchor, mindeg, limit=6):
            v = acc[-1]
            claims = [((c, bk[0]), acc)]
            newly = set(acc[1:])
            ok = True
            for nb in bk[1:]:
                p = route(image[nb], v, newly - {v})
                if p is None:
                    ok = False
                    break
                claims.append(((c, nb), p))
                newly |= set(p[1:]) - {image[nb]}
            if not ok:
                continue
            image[c] = v
            used.update(newly)
            for key, p in claims:
                paths[tuple(sorted(key))] = p
            if place(i + 1):
                return True
            for key, _ in claims:
                del paths[tuple(sorted(key))]
            used.difference_update(newly)
            del image[c]
        return False

    if place(0):
        return Wall(k, dict(image), dict(paths))
    return None


def find_wall(g, k, budget=5_000_000):
    w = match_rigid(g, k, budget)
    if w is None:
        w = match_with_strip(g, k, budget)
    if w is None and k <= 6:
        w = find_wall_raw(g, k, budget)
    return w


def check(name, g, k, budget=5_000_000):
    t0 = time.time()
    try:
        w = find_wall(g, k, budget)
    except BudgetExhausted:
        print(f"{name}: BUDGET ({time.time()-t0:.1f}s)")
        return
    dt = time.time() - t0
    if w is None:
        print(f"{name}: NotFound {dt:.2f}s")
    else:
        v = validate_wall(g, w)
        print(f"{name}: found valid={v is None} {dt:.2f}s {'' if v is None else v}")


ge, we = identity_wall(3)
check("elementary3 k=3", ge, 3)
check("grid8x8 k=3", grid(8, 8), 3)
g1, w1 = build_subdivided_wall(6, times=1)
check("subdiv6 k=6", g1, 6)
check("subdiv6 k=4", g1, 4)
g2, w2 = build_subdivided_wall(10, times=1)
peri = w2.perimeter_hosts()
check("subdiv10 pure k=10", g2, 10)
g2e, ear = attach_path(g2, peri[0], peri[len(peri)//2], 15)
check("subdiv10+ear k=10", g2e, 10)
g3, w3 = build_subdivided_wall(12, times=1)
peri3 = w3.perimeter_hosts()
g3e, ear3 = attach_path(g3, peri3[0], peri3[len(peri3)//2], 15)
check("subdiv12+ear k=12", g3e, 12)
g3s, ear3s = attach_path(g3, peri3[0], peri3[6], 3)
check("subdiv12+shortear k=12", g3s, 12)
tree = build_graph([(0, 1), (1, 2), (2, 3)])
check("tree k=3", tree, 3)
