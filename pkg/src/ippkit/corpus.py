"""Exhaustive small-graph corpora and bundled fixtures.

Connected graphs are generated up to isomorphism by vertex augmentation:
every connected graph on n vertices arises from a connected graph on n-1
vertices by attaching a new vertex to a nonempty neighborhood (delete any
non-cut vertex to see why).  Candidates are deduplicated by a canonical
form computed with color refinement followed by minimization over the
refinement-respecting relabelings.

The package bundles the generated corpora for n <= 8 as graph6 files so
tests and the verification command do not pay the generation cost.  Run
``python -m ippkit.corpus OUTDIR`` to regenerate them.

Known connected counts by vertex count, used as generator self-checks:
1, 1, 2, 6, 21, 112, 853, 11117.
"""

from __future__ import annotations

from importlib import resources
from itertools import permutations, product
from typing import Iterator

from .formats import decode_graph6, encode_graph6, read_edge_list
from .graphs import Graph

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}

MAX_BUNDLED_N = 8

FIXTURE_NAMES = ("pendant_hexagon", "pendant_tree")


def _refine_colors(n: int, masks: tuple[int, ...]) -> list[int]:
    colors = [0] * n
    while True:
        sigs = []
        for v in range(n):
            nb = []
            m = masks[v]
            while m:
                b = m & -m
                nb.append(colors[b.bit_length() - 1])
                m ^= b
            nb.sort()
            sigs.append((colors[v], tuple(nb)))
        uniq = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [uniq[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def canonical_masks(n: int, masks: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical adjacency masks: minimum relabeling over all orderings
    that respect the color refinement."""
    colors = _refine_colors(n, masks)
    ncolors = max(colors) + 1
    cells = [[v for v in range(n) if colors[v] == c] for c in range(ncolors)]
    pos = [0] * n
    best: tuple[int, ...] | None = None
    for arrangement in product(*(permutations(cell) for cell in cells)):
        order = [v for cell in arrangement for v in cell]
        for i, v in enumerate(order):
            pos[v] = i
        rel = []
        for v in order:
            m = masks[v]
            r = 0
            while m:
                b = m & -m
                r |= 1 << pos[b.bit_length() - 1]
                m ^= b
            rel.append(r)
        key = tuple(rel)
        if best is None or key < best:
            best = key
    assert best is not None
    return best


def canonical_graph(g: Graph) -> Graph:
    return Graph(g.n, canonical_masks(g.n, g.masks))


def generate_connected(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices, one per isomorphism class,
    in canonical form, sorted."""
    if n < 1:
        raise ValueError("n must be at least 1")
    level: dict[tuple[int, ...], None] = {(0,): None}
    for size in range(2, n + 1):
        nxt: dict[tuple[int, ...], None] = {}
        new = size - 1
        for parent in level:
            for nbhd in range(1, 1 << new):
                masks = list(parent)
                masks.append(nbhd)
                m = nbhd
                while m:
                    b = m & -m
                    masks[b.bit_length() - 1] |= 1 << new
                    m ^= b
                nxt[canonical_masks(size, tuple(masks))] = None
        level = nxt
        expected = CONNECTED_COUNTS.get(size)
        if expected is not None and len(level) != expected:
            raise AssertionError(
                f"generator produced {len(level)} connected graphs on {size} "
                f"vertices, expected {expected}"
            )
    return [Graph(n, masks) for masks in sorted(level)]


def _data_text(name: str) -> str:
    ref = resources.files("ippkit").joinpath("data", name)
    if not ref.is_file():
        raise FileNotFoundError(f"bundled data file {name!r} is missing")
    return ref.read_text()


def bundled_connected(n: int) -> list[Graph]:
    """The bundled corpus of connected graphs on exactly ``n`` vertices."""
    if not (1 <= n <= MAX_BUNDLED_N):
        raise ValueError(f"bundled corpora cover 1 <= n <= {MAX_BUNDLED_N}")
    return [decode_graph6(line) for line in _data_text(f"connected_n{n}.g6").splitlines()]


def bundled_connected_upto(n: int) -> Iterator[Graph]:
    """All bundled connected graphs with at most ``n`` vertices."""
    for k in range(1, n + 1):
        yield from bundled_connected(k)


def corpus_lines(name: str) -> list[str]:
    """graph6 lines for a bundled corpus name: ``n4`` or cumulative ``le6``."""
    if name.startswith("n") and name[1:].isdigit():
        k = int(name[1:])
        if 1 <= k <= MAX_BUNDLED_N:
            return _data_text(f"connected_n{k}.g6").splitlines()
    if name.startswith("le") and name[2:].isdigit():
        k = int(name[2:])
        if 1 <= k <= MAX_BUNDLED_N:
            out: list[str] = []
            for i in range(1, k + 1):
                out.extend(_data_text(f"connected_n{i}.g6").splitlines())
            return out
    raise FileNotFoundError(f"no bundled corpus named {name!r}")


def fixture_graph(name: str) -> Graph:
    """A bundled named fixture, stored in the edge-list format.

    ``pendant_hexagon``: a 6-cycle with pendant vertices on four of its
    vertices (two adjacent pairs); its optimum is two paths.
    ``pendant_tree``: the same with one unpendanted cycle vertex deleted,
    a 9-vertex tree whose five leaves force three paths.
    """
    if name not in FIXTURE_NAMES:
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return read_edge_list(_data_text(f"{name}.edgelist"))


def write_corpora(outdir: str, max_n: int = MAX_BUNDLED_N) -> None:
    import os

    os.makedirs(outdir, exist_ok=True)
    for n in range(1, max_n + 1):
        graphs = generate_connected(n)
        path = os.path.join(outdir, f"connected_n{n}.g6")
        with open(path, "w") as fh:
            for g in graphs:
                fh.write(encode_graph6(g) + "\n")
        print(f"wrote {len(graphs):6d} graphs to {path}")


if __name__ == "__main__":
    import sys

    write_corpora(sys.argv[1] if len(sys.argv) > 1 else "src/ippkit/data")
