"""Shared test machinery: small named graphs, random samplers, and
definition-level brute-force oracles kept independent of the library's
search code."""

from __future__ import annotations

import random
from itertools import combinations, permutations

from ippkit.graphs import Graph, from_edge_list


# --- named graphs ---------------------------------------------------------


def complete(n: int) -> Graph:
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def diamond() -> Graph:
    return from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])


def bowtie() -> Graph:
    return from_edge_list(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def complete_plus_pendant(k: int) -> Graph:
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)] + [(0, k)]
    return from_edge_list(k + 1, edges)


def disjoint_union(parts: list[Graph]) -> Graph:
    offset = 0
    edges = []
    for g in parts:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return from_edge_list(offset, edges)


def attach_clique(host: Graph, k: int) -> Graph:
    """Glue a k-clique onto vertex 0 of the host; the clique becomes a leaf
    block with cut vertex 0."""
    new = list(range(host.n, host.n + k - 1))
    edges = list(host.edges())
    members = [0] + new
    edges.extend((a, b) for a, b in combinations(members, 2) if (a, b) not in edges)
    return from_edge_list(host.n + k - 1, edges)


# --- random samplers ------------------------------------------------------


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edge_list(n, edges)


def random_connected(rng: random.Random, n: int) -> Graph:
    while True:
        g = random_graph(rng, n, rng.uniform(0.25, 0.75))
        if _components(g) == 1:
            return g


def random_disconnected(rng: random.Random, max_total: int = 12) -> Graph:
    """2 to 4 connected components, each of at most 6 vertices, small enough
    for whole-graph brute force."""
    while True:
        k = rng.randint(2, 4)
        sizes = [rng.randint(1, 6) for _ in range(k)]
        if sum(sizes) <= max_total:
            break
    return disjoint_union([random_connected(rng, s) if s > 1 else complete(1) for s in sizes])


# --- independent oracles --------------------------------------------------


def _neighbors(g: Graph, v: int) -> list[int]:
    return [u for u in range(g.n) if g.adjacent(u, v)]


def _components(g: Graph) -> int:
    seen: set[int] = set()
    count = 0
    for s in range(g.n):
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for u in _neighbors(g, v):
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return count


def bfs_distances(g: Graph) -> list[list[float]]:
    out = []
    for s in range(g.n):
        dist: list[float] = [float("inf")] * g.n
        dist[s] = 0
        queue = [s]
        while queue:
            v = queue.pop(0)
            for u in _neighbors(g, v):
                if dist[u] == float("inf"):
                    dist[u] = dist[v] + 1
                    queue.append(u)
        out.append(dist)
    return out


def brute_cut_vertices(g: Graph) -> set[int]:
    """Cut vertices by direct deletion and component recount."""
    if g.n < 2:
        return set()
    base = _components(g)
    out = set()
    for v in range(g.n):
        keep = [u for u in range(g.n) if u != v]
        pos = {u: i for i, u in enumerate(keep)}
        sub = from_edge_list(
            g.n - 1, [(pos[a], pos[b]) for a, b in g.edges() if v not in (a, b)]
        )
        if _components(sub) > base:
            out.add(v)
    return out


def brute_max_matching_size(g: Graph) -> int:
    edges = list(g.edges())
    best = 0

    def rec(i: int, used: int, k: int) -> None:
        nonlocal best
        best = max(best, k)
        if i == len(edges) or k + (len(edges) - i) <= best:
            return
        u, v = edges[i]
        if not ((used >> u) & 1 or (used >> v) & 1):
            rec(i + 1, used | (1 << u) | (1 << v), k + 1)
        rec(i + 1, used, k)

    rec(0, 0, 0)
    return best


def brute_isometric_path_tuples(g: Graph) -> set[tuple[int, ...]]:
    """Every isometric path, one orientation each (lower endpoint first),
    by checking all orderings of all vertex subsets."""
    dist = bfs_distances(g)
    out: set[tuple[int, ...]] = {(v,) for v in range(g.n)}
    for size in range(2, g.n + 1):
        for subset in combinations(range(g.n), size):
            for order in permutations(subset):
                if order[0] > order[-1]:
                    continue
                if all(g.adjacent(a, b) for a, b in zip(order, order[1:])) and dist[
                    order[0]
                ][order[-1]] == size - 1:
                    out.add(order)
    return out


def qualifying_sets(g: Graph) -> list[int]:
    """Bitmasks of vertex sets orderable into an isometric path.

    Orderings are walked by adjacency-pruned backtracking (a full
    permutation sweep is hopeless once cross-component masks show up);
    the isometry test itself happens only on completed orderings.
    """
    dist = bfs_distances(g)
    masks = []
    for mask in range(1, 1 << g.n):
        members = [v for v in range(g.n) if (mask >> v) & 1]
        k = len(members)
        if k == 1:
            masks.append(mask)
            continue
        # endpoints of a qualifying ordering sit at distance exactly k - 1
        starts = [
            u for u in members if any(dist[u][w] == k - 1 for w in members if w != u)
        ]
        ok = False
        for start in starts:
            stack = [(start, 1 << start, 1)]
            while stack and not ok:
                cur, used, cnt = stack.pop()
                if cnt == k:
                    if dist[start][cur] == k - 1:
                        ok = True
                    continue
                for w in members:
                    if not (used >> w) & 1 and g.adjacent(cur, w):
                        stack.append((w, used | (1 << w), cnt + 1))
            if ok:
                break
        if ok:
            masks.append(mask)
    return masks


def subset_dp_ipp(g: Graph) -> int:
    """Minimum partition size by subset dynamic programming; handles
    disconnected graphs, feasible to roughly 13 vertices."""
    by_lowest: dict[int, list[int]] = {}
    for mask in qualifying_sets(g):
        by_lowest.setdefault((mask & -mask).bit_length() - 1, []).append(mask)
    full = (1 << g.n) - 1
    dp = [0] * (full + 1)
    for mask in range(1, full + 1):
        v = (mask & -mask).bit_length() - 1
        best = g.n + 1
        for s in by_lowest.get(v, []):
            if s & mask == s:
                c = dp[mask ^ s] + 1
                if c < best:
                    best = c
        dp[mask] = best
    return dp[full]


def brute_has_v_extendable(g: Graph, v: int) -> bool:
    """Exhaustively decide whether some partition of size at most the
    matching number keeps ``v`` at a path end."""
    nu = brute_max_matching_size(g)
    dist = bfs_distances(g)

    def set_ok_for_v(members: tuple[int, ...]) -> bool:
        for order in permutations(members):
            if order[0] != v and order[-1] != v:
                continue
            if all(g.adjacent(a, b) for a, b in zip(order, order[1:])) and dist[
                order[0]
            ][order[-1]] == len(members) - 1:
                return True
        return False

    quals = qualifying_sets(g)
    by_lowest: dict[int, list[int]] = {}
    for mask in quals:
        by_lowest.setdefault((mask & -mask).bit_length() - 1, []).append(mask)

    def rec(uncovered: int, count: int) -> bool:
        if count > nu:
            return False
        if uncovered == 0:
            return True
        w = (uncovered & -uncovered).bit_length() - 1
        for s in by_lowest.get(w, []):
            if s & uncovered != s:
                continue
            if (s >> v) & 1:
                members = tuple(u for u in range(g.n) if (s >> u) & 1)
                if not set_ok_for_v(members):
                    continue
            if rec(uncovered & ~s, count + 1):
                return True
        return False

    return rec((1 << g.n) - 1, 0)


def reference_decode_graph6(s: str) -> tuple[int, set[tuple[int, int]]]:
    """Second graph6 reader, string-of-bits style, for cross-checking."""
    n = ord(s[0]) - 63
    bits = "".join(format(ord(c) - 63, "06b") for c in s[1:])
    edges = set()
    idx = 0
    for col in range(1, n):
        for row in range(col):
            if bits[idx] == "1":
                edges.add((row, col))
            idx += 1
    return n, edges
