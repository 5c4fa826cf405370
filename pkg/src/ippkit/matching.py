"""Maximum matchings on general graphs and the matching-based partition
construction.

The engine is the classic unweighted blossom algorithm: breadth-first
search for augmenting paths with odd cycles contracted on the fly via a
``base`` array.  Cubic time, which is far more than enough at desk scale,
and exact on non-bipartite graphs where greedy or bipartite methods fail.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import Graph, GraphError
from .partition import IsometricPathPartition
from .graphs import Path


class InvalidMatchingError(GraphError):
    """Edge set that is not a matching of the given graph."""


@dataclass(frozen=True)
class Matching:
    """Set of vertex-disjoint edges, each stored as (u, v) with u < v."""

    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def saturated(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


def _as_matching(pairs: Iterable[tuple[int, int]]) -> Matching:
    return Matching(frozenset((min(u, v), max(u, v)) for u, v in pairs))


def check_matching(g: Graph, m: Matching) -> None:
    """Raise :class:`InvalidMatchingError` unless ``m`` is a matching of ``g``."""
    seen: set[int] = set()
    for u, v in m.edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.adjacent(u, v):
            raise InvalidMatchingError(f"({u},{v}) is not an edge of the graph")
        if u in seen or v in seen:
            raise InvalidMatchingError(f"edges share endpoint at ({u},{v})")
        seen.add(u)
        seen.add(v)


def maximum_matching(g: Graph, *, order: Sequence[int] | None = None) -> Matching:
    """Matching of maximum cardinality (augmenting-path free, not merely
    maximal).

    ``order`` only changes which maximum matching is returned, never its
    size; the default ascending order makes the result deterministic.
    """
    n = g.n
    verts = list(order) if order is not None else list(range(n))
    if sorted(verts) != list(range(n)):
        raise GraphError("order must be a permutation of the vertices")
    match = [-1] * n

    # Greedy warm start cuts the number of augmenting searches.
    for v in verts:
        if match[v] == -1:
            for u in g.neighbors(v):
                if match[u] == -1:
                    match[u] = v
                    match[v] = u
                    break

    p = [-1] * n
    base = list(range(n))

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def lca(a: int, b: int) -> int:
        used = [False] * n
        a = base[a]
        while True:
            used[a] = True
            if match[a] == -1:
                break
            a = base[p[match[a]]]
        b = base[b]
        while not used[b]:
            b = base[p[match[b]]]
        return b

    def find_augmenting(root: int) -> int:
        for i in range(n):
            p[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in g.neighbors(v):
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    # Odd cycle: contract the blossom down to its base.
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    q.append(match[to])
        return -1

    for v in verts:
        if match[v] == -1:
            u = find_augmenting(v)
            while u != -1:
                pv = p[u]
                ppv = match[pv]
                match[u] = pv
                match[pv] = u
                u = ppv

    return _as_matching((v, match[v]) for v in range(n) if match[v] > v)


def unsaturated_vertices(g: Graph, m: Matching) -> frozenset[int]:
    """Vertices of ``g`` not incident to any edge of ``m``."""
    check_matching(g, m)
    return frozenset(range(g.n)) - m.saturated


def is_mixed_on_edge(g: Graph, v: int, e: tuple[int, int]) -> bool:
    """True iff ``v`` is adjacent to exactly one endpoint of the edge ``e``."""
    a, b = e
    if not g.adjacent(a, b):
        raise GraphError(f"({a},{b}) is not an edge")
    if v in (a, b):
        raise GraphError(f"vertex {v} is incident to the edge")
    return g.adjacent(v, a) != g.adjacent(v, b)


def matching_ipp(g: Graph, m: Matching) -> IsometricPathPartition:
    """Partition made of the matching edges (two-vertex paths) plus one
    singleton per unsaturated vertex.

    One- and two-vertex paths are always isometric, so this is a valid
    partition of size |V| - |m|, which is what makes |V| - nu an upper
    bound on the optimum.
    """
    check_matching(g, m)
    paths = [Path(e) for e in sorted(m.edges)]
    paths.extend(Path((v,)) for v in sorted(unsaturated_vertices(g, m)))
    return IsometricPathPartition(tuple(paths))


def perfect_matching_avoiding(g: Graph, u: int) -> Matching | None:
    """A perfect matching of the graph with ``u`` deleted, or None.

    For a one-vertex graph the empty matching is vacuously perfect on the
    empty remainder.
    """
    if not (0 <= u < g.n):
        raise GraphError(f"vertex {u} out of range")
    rest = g.n - 1
    if rest % 2 == 1:
        return None
    if rest == 0:
        return Matching(frozenset())
    keep = [v for v in range(g.n) if v != u]
    masks = []
    for v in keep:
        m = g.masks[v] & ~(1 << u)
        r = 0
        while m:
            b = m & -m
            w = b.bit_length() - 1
            r |= 1 << (w if w < u else w - 1)
            m ^= b
        masks.append(r)
    sub = Graph(rest, tuple(masks))
    mm = maximum_matching(sub)
    if 2 * mm.size != rest:
        return None
    back = keep
    return _as_matching((back[a], back[b]) for a, b in mm.edges)


def all_maximum_matchings(g: Graph) -> list[Matching]:
    """Every maximum matching, by exhaustive branching over the edge list.

    Exponential; intended for cross-checking the engine on small graphs.
    """
    edges = list(g.edges())
    best_size = maximum_matching(g).size
    out: list[Matching] = []

    def rec(i: int, used: int, chosen: list[tuple[int, int]]) -> None:
        if len(chosen) + (len(edges) - i) < best_size:
            return
        if len(chosen) == best_size:
            out.append(_as_matching(chosen))
            return
        if i == len(edges):
            return
        u, v = edges[i]
        if not ((used >> u) & 1 or (used >> v) & 1):
            chosen.append((u, v))
            rec(i + 1, used | (1 << u) | (1 << v), chosen)
            chosen.pop()
        rec(i + 1, used, chosen)

    rec(0, 0, [])
    return out
