"""Exact minimum isometric path partitions.

Three routes live here and deliberately do not share search logic:

* ``ipp_exact`` is the production branch-and-bound over enumerated
  geodesics, seeded with the matching-based partition as incumbent.
* ``ipp_bruteforce_oracle`` is an independent cross-check that qualifies
  vertex subsets straight from the definition (can this set be ordered
  into a shortest path?) and then runs a plain subset dynamic program
  with no pruning.
* ``find_v_extendable_ipp`` searches for a partition of size at most the
  matching number in which a chosen vertex is a path endpoint.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

from .graphs import (
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    Path,
    all_pairs_distances,
    connected_components,
    induced_subgraph,
    is_connected,
)
from .matching import matching_ipp, maximum_matching
from .partition import IsometricPathPartition


@dataclass(frozen=True)
class SolverConfig:
    """Resource budgets for one solve."""

    max_paths_per_pair: int = 10_000
    node_budget: int = 10_000_000
    time_budget: float = 60.0

    def __post_init__(self) -> None:
        if self.max_paths_per_pair < 1 or self.node_budget < 1 or self.time_budget <= 0:
            raise ValueError("all solver budgets must be positive")


DEFAULT_CONFIG = SolverConfig()


class BudgetExceededError(RuntimeError):
    """A budget ran out; carries the best bounds proven so far.

    ``incumbent`` is a valid partition witnessing ``upper_bound`` whenever
    one was found.
    """

    def __init__(
        self,
        reason: str,
        lower_bound: int,
        upper_bound: int,
        incumbent: IsometricPathPartition | None,
    ) -> None:
        super().__init__(
            f"solver budget exhausted ({reason}); bounds [{lower_bound}, {upper_bound}]"
        )
        self.reason = reason
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.incumbent = incumbent


class PathEnumeration(NamedTuple):
    paths: tuple[Path, ...]
    truncated: bool


def enumerate_isometric_paths(
    g: Graph, d: DistanceMatrix, cfg: SolverConfig = DEFAULT_CONFIG
) -> PathEnumeration:
    """All isometric paths of a connected graph, one orientation each.

    Singletons come first, then for every vertex pair (u, v) with u < v the
    geodesics from u to v in depth-first order over the shortest-path
    predecessor structure (so each path is reported lowest-endpoint first).
    Hitting the per-pair cap sets ``truncated`` instead of failing.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("path enumeration requires a connected graph")
    n = g.n
    paths: list[Path] = [Path((v,)) for v in range(n)]
    truncated = False
    cap = cfg.max_paths_per_pair
    dist = d.dist
    for u in range(n):
        du = dist[u]
        for v in range(u + 1, n):
            target = du[v]
            found = 0
            # Depth-first walk from u toward v through vertices that stay
            # on some geodesic: one step closer to v, one step further
            # from u.
            stack: list[int] = [u]
            iters: list[list[int]] = [
                [w for w in g.neighbors(u) if du[w] == 1 and dist[w][v] == target - 1]
            ]
            pos = [0]
            while stack:
                if stack[-1] == v:
                    found += 1
                    if found > cap:
                        truncated = True
                        break
                    paths.append(Path(tuple(stack)))
                    stack.pop()
                    iters.pop()
                    pos.pop()
                    continue
                options = iters[-1]
                if pos[-1] >= len(options):
                    stack.pop()
                    iters.pop()
                    pos.pop()
                    continue
                w = options[pos[-1]]
                pos[-1] += 1
                stack.append(w)
                step = len(stack) - 1
                if w == v:
                    iters.append([])
                else:
                    iters.append(
                        [
                            x
                            for x in g.neighbors(w)
                            if du[x] == step + 1 and dist[x][v] == target - step - 1
                        ]
                    )
                pos.append(0)
    return PathEnumeration(tuple(paths), truncated)


def ipp_lower_bound(g: Graph, d: DistanceMatrix) -> int:
    """ceil(|V| / (diameter + 1)): no path can hold more vertices than the
    diameter allows."""
    if not is_connected(g):
        raise DisconnectedGraphError("lower bound requires a connected graph")
    return -(-g.n // (d.diameter + 1))


class _Abort(Exception):
    def __init__(self, reason: str) -> None:
        self.reason = reason


def _candidates_by_vertex(
    n: int, paths: tuple[Path, ...]
) -> list[list[tuple[int, Path]]]:
    by_vertex: list[list[tuple[int, Path]]] = [[] for _ in range(n)]
    for p in paths:
        mask = 0
        for v in p.vertices:
            mask |= 1 << v
        for v in p.vertices:
            by_vertex[v].append((mask, p))
    # Longer paths first: they shrink the remaining cover fastest.
    for lst in by_vertex:
        lst.sort(key=lambda mp: (-len(mp[1].vertices), mp[1].vertices))
    return by_vertex


def ipp_exact(g: Graph, cfg: SolverConfig = DEFAULT_CONFIG) -> IsometricPathPartition:
    """A provably minimum isometric path partition of a connected graph.

    Branch-and-bound: the incumbent starts as the matching-based partition
    (size |V| - nu), branching covers the lowest uncovered vertex with any
    still-free isometric path through it, and a node is cut once the path
    count plus ceil(uncovered / (diameter + 1)) cannot beat the incumbent.

    Raises :class:`BudgetExceededError` when a budget is hit or the path
    enumeration was truncated; the error carries sound bounds and the best
    partition found, which is valid but not proven minimum.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("ipp_exact requires a connected graph")
    n = g.n
    d = all_pairs_distances(g)
    lower = ipp_lower_bound(g, d)
    incumbent = matching_ipp(g, maximum_matching(g))
    best_paths = list(incumbent.paths)
    best_size = len(best_paths)
    if best_size == lower:
        return incumbent

    enum = enumerate_isometric_paths(g, d, cfg)
    by_vertex = _candidates_by_vertex(n, enum.paths)
    denom = d.diameter + 1
    deadline = time.monotonic() + cfg.time_budget
    nodes = 0
    full = (1 << n) - 1
    chosen: list[Path] = []

    def rec(uncovered: int, count: int) -> None:
        nonlocal nodes, best_size, best_paths
        nodes += 1
        if nodes > cfg.node_budget:
            raise _Abort("node budget")
        if nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _Abort("time budget")
        if uncovered == 0:
            if count < best_size:
                best_size = count
                best_paths = chosen.copy()
            return
        if count + -(-uncovered.bit_count() // denom) >= best_size:
            return
        v = (uncovered & -uncovered).bit_length() - 1
        for mask, p in by_vertex[v]:
            if mask & uncovered == mask:
                chosen.append(p)
                rec(uncovered & ~mask, count + 1)
                chosen.pop()

    aborted: str | None = None
    try:
        rec(full, 0)
    except _Abort as a:
        aborted = a.reason

    result = IsometricPathPartition(tuple(best_paths))
    if best_size == lower:
        # Optimal regardless of truncation: the lower bound is budget-free.
        return result
    if aborted is not None:
        raise BudgetExceededError(aborted, lower, best_size, result)
    if enum.truncated:
        raise BudgetExceededError("path enumeration cap", lower, best_size, result)
    return result


def ipp_exact_components(
    g: Graph, cfg: SolverConfig = DEFAULT_CONFIG
) -> IsometricPathPartition:
    """Minimum partition of an arbitrary graph, component by component.

    Paths never cross components, so the optimum is the sum of the
    per-component optima.
    """
    paths: list[Path] = []
    for comp in connected_components(g):
        sub, back = induced_subgraph(g, comp)
        part = ipp_exact(sub, cfg)
        paths.extend(Path(tuple(back[v] for v in p.vertices)) for p in part.paths)
    return IsometricPathPartition(tuple(paths))


def ipp_bruteforce_oracle(g: Graph) -> int:
    """Exact optimum by exhaustive search, for cross-checking ``ipp_exact``.

    A vertex set qualifies iff some ordering of it forms an isometric path
    (checked by direct backtracking over orderings, pruning on the fact
    that every prefix of a shortest path is itself shortest).  A bottom-up
    subset DP then finds the fewest qualifying sets that partition V.
    Shares nothing with the branch-and-bound beyond the graph itself.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("oracle requires a connected graph")
    if g.n > 10:
        raise ValueError("oracle is limited to graphs with at most 10 vertices")
    n = g.n
    # Floyd-Warshall on purpose: even the metric is computed independently.
    big = n + 1
    dist = [[0 if i == j else (1 if g.adjacent(i, j) else big) for j in range(n)] for i in range(n)]
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik >= big:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt

    def qualifies(mask: int) -> bool:
        size = mask.bit_count()
        if size <= 2:
            # Singletons always; a pair iff it is an edge.
            if size == 1:
                return True
            a = (mask & -mask).bit_length() - 1
            b = (mask ^ (mask & -mask)).bit_length() - 1
            return g.adjacent(a, b)
        members = []
        m = mask
        while m:
            b = m & -m
            members.append(b.bit_length() - 1)
            m ^= b
        for start in members:
            stack = [(start, 1 << start, 1)]
            while stack:
                cur, used, cnt = stack.pop()
                if cnt == size:
                    return True
                for w in members:
                    if (used >> w) & 1:
                        continue
                    if g.adjacent(cur, w) and dist[start][w] == cnt:
                        stack.append((w, used | (1 << w), cnt + 1))
        return False

    full = (1 << n) - 1
    by_lowest: list[list[int]] = [[] for _ in range(n)]
    for mask in range(1, full + 1):
        if qualifies(mask):
            by_lowest[(mask & -mask).bit_length() - 1].append(mask)

    dp = [0] * (full + 1)
    for mask in range(1, full + 1):
        v = (mask & -mask).bit_length() - 1
        best = n + 1
        for s in by_lowest[v]:
            if s & mask == s:
                c = dp[mask ^ s]
                if c + 1 < best:
                    best = c + 1
        dp[mask] = best
    return dp[full]


def find_v_extendable_ipp(
    g: Graph, v: int, cfg: SolverConfig = DEFAULT_CONFIG
) -> IsometricPathPartition | None:
    """A partition of size at most nu(g) whose path through ``v`` has ``v``
    as an endpoint, or None when no such partition exists.

    Same engine as ``ipp_exact`` with two twists: every candidate path that
    contains ``v`` anywhere but an endpoint is discarded, and the search
    stops at the first partition within the size cutoff.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("connected input required")
    if not (0 <= v < g.n):
        raise ValueError(f"vertex {v} out of range")
    n = g.n
    nu = maximum_matching(g).size
    d = all_pairs_distances(g)
    if -(-n // (d.diameter + 1)) > nu:
        return None
    enum = enumerate_isometric_paths(g, d, cfg)
    kept = tuple(
        p
        for p in enum.paths
        if v not in p.vertices[1:-1]
    )
    by_vertex = _candidates_by_vertex(n, kept)
    denom = d.diameter + 1
    deadline = time.monotonic() + cfg.time_budget
    nodes = 0
    chosen: list[Path] = []
    found: list[Path] | None = None

    def rec(uncovered: int, count: int) -> bool:
        nonlocal nodes, found
        nodes += 1
        if nodes > cfg.node_budget:
            raise _Abort("node budget")
        if nodes % 4096 == 0 and time.monotonic() > deadline:
            raise _Abort("time budget")
        if uncovered == 0:
            found = chosen.copy()
            return True
        if count + -(-uncovered.bit_count() // denom) > nu:
            return False
        w = (uncovered & -uncovered).bit_length() - 1
        for mask, p in by_vertex[w]:
            if mask & uncovered == mask:
                chosen.append(p)
                if rec(uncovered & ~mask, count + 1):
                    return True
                chosen.pop()
        return False

    try:
        ok = rec((1 << n) - 1, 0)
    except _Abort as a:
        raise BudgetExceededError(a.reason, 0, n, None) from None
    if ok and found is not None:
        return IsometricPathPartition(tuple(found))
    if enum.truncated:
        # The missing geodesics might have made it feasible.
        raise BudgetExceededError("path enumeration cap", 0, n, None)
    return None


def verify_v_extendable(
    g: Graph, d: DistanceMatrix, v: int, ipp: IsometricPathPartition
) -> bool:
    """Check the defining properties: valid partition, size <= nu, and v is
    an endpoint of its path."""
    from .partition import verify_ipp

    if not verify_ipp(g, d, ipp):
        return False
    if ipp.size > maximum_matching(g).size:
        return False
    for p in ipp.paths:
        if v in p.vertices:
            return v in p.endpoints
    return False
