"""Biconnected-component machinery: block decomposition, block-cut tree,
block-graph recognition (structural and via the diamond-free chordal
equivalence), and the even-block counter.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import DisconnectedGraphError, Graph, GraphError, is_connected


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks of a connected graph.

    ``blocks`` holds each block's vertices sorted ascending, with the block
    list itself in lexicographic order.  ``block_cut_tree[i]`` lists the cut
    vertices contained in block ``i``, which is the bipartite adjacency of
    the block-cut tree.  Leaf blocks are those containing exactly one cut
    vertex.
    """

    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]
    block_cut_tree: tuple[tuple[int, ...], ...]
    leaf_block_indices: tuple[int, ...]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Decompose a connected graph into its blocks (lowpoint depth-first
    search with an edge stack).

    A one-vertex graph is a single block; an isolated edge is a single
    block.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("block decomposition requires a connected graph")
    n = g.n
    if n == 1:
        return BlockDecomposition(((0,),), frozenset(), ((),), ())

    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    stack: list[tuple[int, int]] = []
    raw_blocks: list[set[int]] = []
    cuts: set[int] = set()
    timer = 0

    # Iterative DFS; each frame tracks the neighbor iterator position.
    root = 0
    work = [(root, iter(g.neighbors(root)))]
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    while work:
        v, it = work[-1]
        advanced = False
        for to in it:
            if disc[to] == -1:
                parent[to] = v
                if v == root:
                    root_children += 1
                stack.append((v, to))
                disc[to] = low[to] = timer
                timer += 1
                work.append((to, iter(g.neighbors(to))))
                advanced = True
                break
            if to != parent[v] and disc[to] < disc[v]:
                stack.append((v, to))
                low[v] = min(low[v], disc[to])
        if advanced:
            continue
        work.pop()
        if work:
            u = work[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                # u closes a block; pop its edges.
                block: set[int] = set()
                while stack:
                    a, b = stack.pop()
                    block.add(a)
                    block.add(b)
                    if (a, b) == (u, v):
                        break
                raw_blocks.append(block)
                if u != root or root_children > 1:
                    cuts.add(u)

    blocks = tuple(sorted(tuple(sorted(b)) for b in raw_blocks))
    tree = tuple(tuple(sorted(set(b) & cuts)) for b in blocks)
    leaves = tuple(i for i, c in enumerate(tree) if len(c) == 1)
    return BlockDecomposition(blocks, frozenset(cuts), tree, leaves)


def is_biconnected(g: Graph) -> bool:
    """Connected with no cut vertices; one- and two-vertex graphs qualify."""
    if not is_connected(g):
        return False
    return len(block_decomposition(g).cut_vertices) == 0


def is_complete_on(g: Graph, vertices: tuple[int, ...]) -> bool:
    """True iff the given vertices are pairwise adjacent."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    for v in vertices:
        if g.masks[v] & mask != mask & ~(1 << v):
            return False
    return True


def is_block_graph(g: Graph) -> bool:
    """True iff every block of the connected graph induces a complete graph."""
    dec = block_decomposition(g)
    return all(is_complete_on(g, b) for b in dec.blocks)


def is_diamond_free_chordal(g: Graph) -> bool:
    """The alternate route to block-graph recognition: no induced K4 minus
    an edge, and no induced cycle of length four or more.

    Chordality is checked by a maximum-cardinality search followed by
    perfect-elimination-order verification; diamond-freeness by scanning
    all 4-subsets, which is plenty fast at the sizes this library targets.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("connected input required")
    n = g.n
    # Any induced 4-vertex subgraph with exactly five edges is a diamond.
    for quad in combinations(range(n), 4):
        m = sum(1 for a, b in combinations(quad, 2) if g.adjacent(a, b))
        if m == 5:
            return False
    return _is_chordal(g)


def _is_chordal(g: Graph) -> bool:
    n = g.n
    # Maximum cardinality search, breaking weight ties by lowest id.
    weight = [0] * n
    order: list[int] = []
    placed = 0
    for _ in range(n):
        best = -1
        for v in range(n):
            if not (placed >> v) & 1 and (best == -1 or weight[v] > weight[best]):
                best = v
        order.append(best)
        placed |= 1 << best
        for u in g.neighbors(best):
            if not (placed >> u) & 1:
                weight[u] += 1
    order.reverse()
    # order is now a candidate perfect elimination ordering.
    pos = {v: i for i, v in enumerate(order)}
    for i, v in enumerate(order):
        later = [u for u in g.neighbors(v) if pos[u] > i]
        if not later:
            continue
        anchor = min(later, key=lambda u: pos[u])
        for u in later:
            if u != anchor and not g.adjacent(anchor, u):
                return False
    return True


def count_even_blocks(d: BlockDecomposition) -> int:
    """Number of blocks with an even vertex count."""
    return sum(1 for b in d.blocks if len(b) % 2 == 0)


def require_leaf_clique(g: Graph, clique: tuple[int, ...]) -> int:
    """Return the cut vertex of the given leaf-clique, validating the claim."""
    dec = block_decomposition(g)
    key = tuple(sorted(clique))
    for i, b in enumerate(dec.blocks):
        if b == key:
            if i not in dec.leaf_block_indices:
                raise GraphError(f"block {key} is not a leaf block")
            if not is_complete_on(g, b):
                raise GraphError(f"leaf block {key} is not a clique")
            return dec.block_cut_tree[i][0]
    raise GraphError(f"{key} is not a block of the graph")
