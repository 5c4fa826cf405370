"""Immutable graph primitives: simple undirected graphs, hop distances,
and path predicates.

Vertices are dense integer ids 0..n-1.  Adjacency is stored as one neighbor
bitmask per vertex, which keeps the solver's inner loops cheap and makes
every value hashable and safe to share across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

# Sentinel for "no path"; strictly larger than any achievable hop distance
# at supported sizes, so integer arithmetic (diameter + 1, comparisons)
# stays total.
INFINITE = 2**30


class GraphError(ValueError):
    """Invalid graph construction or graph-valued argument."""


class GraphFormatError(GraphError):
    """Malformed textual graph encoding."""


class InvalidPathError(GraphError):
    """Sequence of vertices that is not a path of the given graph."""


class DisconnectedGraphError(GraphError):
    """Operation requires a connected graph."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``masks[v]`` is the bitmask of neighbors of ``v``.  Instances are
    immutable; build them with :func:`from_edge_list` or the decoders in
    :mod:`ippkit.formats`.
    """

    n: int
    masks: tuple[int, ...]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.masks) // 2

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def neighbors(self, v: int) -> Iterator[int]:
        """Yield neighbors of ``v`` in ascending order."""
        m = self.masks[v]
        while m:
            b = m & -m
            yield b.bit_length() - 1
            m ^= b

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as ordered pairs (u, v) with u < v, lexicographically."""
        for u in range(self.n):
            m = self.masks[u] >> (u + 1)
            while m:
                b = m & -m
                yield (u, u + 1 + b.bit_length() - 1)
                m ^= b


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on ``n`` vertices from an edge list.

    Duplicate edges collapse; self-loops and out-of-range endpoints are
    rejected.
    """
    if n < 1:
        raise GraphError("graph must have at least one vertex")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, tuple(masks))


def connected_components(g: Graph) -> list[list[int]]:
    """Vertex lists of the connected components, each sorted, ordered by
    smallest vertex."""
    seen = 0
    out: list[list[int]] = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            reach = 0
            m = frontier
            while m:
                b = m & -m
                reach |= g.masks[b.bit_length() - 1]
                m ^= b
            frontier = reach & ~comp
            comp |= frontier
        seen |= comp
        out.append(_bits(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on the given vertices.

    Returns the subgraph (relabeled to dense ids, order-preserving) together
    with the mapping from new ids to original ids.
    """
    keep = sorted(set(vertices))
    if not keep:
        raise GraphError("induced subgraph needs at least one vertex")
    if keep[0] < 0 or keep[-1] >= g.n:
        raise GraphError("vertex out of range")
    pos = {v: i for i, v in enumerate(keep)}
    masks = [0] * len(keep)
    for i, v in enumerate(keep):
        m = g.masks[v]
        r = 0
        while m:
            b = m & -m
            w = b.bit_length() - 1
            if w in pos:
                r |= 1 << pos[w]
            m ^= b
        masks[i] = r
    return Graph(len(keep), tuple(masks)), tuple(keep)


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs hop distances.

    ``dist[u][v]`` is the hop count, :data:`INFINITE` across components.
    ``diameter`` is the maximum entry over all pairs, hence INFINITE for a
    disconnected graph.
    """

    n: int
    dist: tuple[tuple[int, ...], ...]
    diameter: int


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Breadth-first hop distances from every vertex."""
    n = g.n
    rows: list[tuple[int, ...]] = []
    diameter = 0
    for s in range(n):
        dist = [INFINITE] * n
        dist[s] = 0
        seen = 1 << s
        frontier = seen
        d = 0
        while frontier:
            reach = 0
            m = frontier
            while m:
                b = m & -m
                reach |= g.masks[b.bit_length() - 1]
                m ^= b
            frontier = reach & ~seen
            seen |= frontier
            d += 1
            m = frontier
            while m:
                b = m & -m
                dist[b.bit_length() - 1] = d
                m ^= b
        diameter = max(diameter, max(dist))
        rows.append(tuple(dist))
    return DistanceMatrix(n, tuple(rows), diameter)


@dataclass(frozen=True)
class Path:
    """Ordered sequence of distinct vertices; adjacency is checked against a
    graph by the path predicates, not at construction."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) < 1:
            raise InvalidPathError("a path has at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidPathError(f"repeated vertex in {self.vertices}")

    @property
    def length(self) -> int:
        """Number of edges (vertex count minus one)."""
        return len(self.vertices) - 1

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)))


def validate_path(g: Graph, p: Path) -> None:
    """Raise :class:`InvalidPathError` unless ``p`` is a path of ``g``."""
    for v in p.vertices:
        if not (0 <= v < g.n):
            raise InvalidPathError(f"vertex {v} out of range")
    for a, b in zip(p.vertices, p.vertices[1:]):
        if not g.adjacent(a, b):
            raise InvalidPathError(f"({a},{b}) is not an edge")


def is_isometric_path(g: Graph, d: DistanceMatrix, p: Path) -> bool:
    """True iff the path's length equals the distance between its endpoints.

    One-vertex paths are always isometric.
    """
    validate_path(g, p)
    a, b = p.endpoints
    return p.length == d.dist[a][b]


def is_induced_path(g: Graph, p: Path) -> bool:
    """True iff no two non-consecutive path vertices are adjacent."""
    validate_path(g, p)
    vs = p.vertices
    for i in range(len(vs)):
        for j in range(i + 2, len(vs)):
            if g.adjacent(vs[i], vs[j]):
                return False
    return True


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out
