"""Small-graph helpers shared across modules.

Vertex sets are bitmasks (desk scale, n <= 20 or so); adjacency is a list of
neighbor masks indexed by vertex.
"""

from __future__ import annotations

from itertools import combinations


def adjacency_masks(n, edges):
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def component_masks(adj, alive):
    """Connected components of the induced subgraph on ``alive``."""
    comps = []
    rest = alive
    while rest:
        seed = rest & (-rest)
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier ^= 1 << v
            new = adj[v] & alive & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(adj, alive):
    if alive == 0:
        return True
    seed = alive & (-alive)
    comp = seed
    frontier = seed
    while frontier:
        v = (frontier & -frontier).bit_length() - 1
        frontier ^= 1 << v
        new = adj[v] & alive & ~comp
        comp |= new
        frontier |= new
    return comp == alive


def odd_even_components(adj, alive):
    odd = even = 0
    for comp in component_masks(adj, alive):
        if comp.bit_count() & 1:
            odd += 1
        else:
            even += 1
    return odd, even


def vertex_connectivity_flow(n, adj, cap):
    """Vertex connectivity via max vertex-disjoint paths, truncated at cap.

    Splits every vertex into in/out nodes with unit capacity and runs BFS
    augmentation per nonadjacent pair.
    """
    if n <= 1:
        return 0
    nonadj_pairs = [(s, t) for s in range(n) for t in range(s + 1, n)
                    if not (adj[s] >> t) & 1]
    if not nonadj_pairs:
        return min(cap, n - 1)
    best = cap
    for s, t in nonadj_pairs:
        best = min(best, _max_vertex_disjoint(n, adj, s, t, best))
        if best == 0:
            break
    return best


def _max_vertex_disjoint(n, adj, s, t, limit):
    # node 2v = v_in, 2v+1 = v_out; arcs: v_in->v_out (cap 1, v != s,t),
    # u_out->v_in per edge (cap 1 each direction)
    nn = 2 * n
    capacity = {}

    def add(a, b, c):
        capacity[(a, b)] = capacity.get((a, b), 0) + c
        capacity.setdefault((b, a), 0)

    for v in range(n):
        add(2 * v, 2 * v + 1, 1 if v not in (s, t) else limit + n)
    for u in range(n):
        m = adj[u]
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            add(2 * u + 1, 2 * v, 1)
    out = [[] for _ in range(nn)]
    for (a, b) in capacity:
        out[a].append(b)
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        prev = [-1] * nn
        prev[src] = src
        queue = [src]
        qi = 0
        while qi < len(queue) and prev[dst] == -1:
            x = queue[qi]
            qi += 1
            for y in out[x]:
                if prev[y] == -1 and capacity[(x, y)] > 0:
                    prev[y] = x
                    queue.append(y)
        if prev[dst] == -1:
            break
        x = dst
        while x != src:
            p = prev[x]
            capacity[(p, x)] -= 1
            capacity[(x, p)] += 1
            x = p
        flow += 1
    return flow


def vertex_connectivity_bruteforce(n, adj, cap):
    """Oracle: smallest disconnecting subset by exhaustive enumeration."""
    full = (1 << n) - 1
    for size in range(0, min(cap, n - 1)):
        for subset in combinations(range(n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            rest = full & ~mask
            if rest and len(component_masks(adj, rest)) > 1:
                return size
    return min(cap, n - 1)


def enumerate_cycles(n, adj, max_len):
    """All cycles of length <= max_len, as vertex tuples.

    Each cycle appears once, rooted at its smallest vertex with its second
    vertex smaller than its last (canonical direction).
    """
    cycles = []

    def neighbors(v):
        m = adj[v]
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            yield w

    for root in range(n):
        stack = [(root, 1 << root, (root,))]
        while stack:
            v, visited, path = stack.pop()
            for w in neighbors(v):
                if w == root and len(path) >= 3:
                    if path[1] < path[-1]:
                        cycles.append(path)
                    continue
                if w <= root or (visited >> w) & 1 or len(path) >= max_len:
                    continue
                stack.append((w, visited | (1 << w), path + (w,)))
    return cycles


def is_bipartite(n, adj):
    color = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            x = queue.pop()
            m = adj[x]
            while m:
                y = (m & -m).bit_length() - 1
                m &= m - 1
                if color[y] == -1:
                    color[y] = color[x] ^ 1
                    queue.append(y)
                elif color[y] == color[x]:
                    return False
    return True
