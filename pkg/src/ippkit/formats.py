"""Textual graph formats: graph6 (short form, n <= 62) and a plain
edge-list format.

graph6 packs the upper triangle of the adjacency matrix, column by column,
into 6-bit groups offset by 63 so every byte is printable.  The edge-list
format is line-oriented: a header line ``n m`` followed by ``m`` lines
``u v`` with 0-based vertex ids; ``#`` starts a comment.
"""

from __future__ import annotations

from .graphs import Graph, GraphFormatError, from_edge_list

_HEADER = ">>graph6<<"


def decode_graph6(text: str) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header tolerated)."""
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise GraphFormatError(f"byte {ord(ch)} out of graph6 range 63..126")
    first = ord(s[0]) - 63
    if first == 63:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported")
    n = first
    if n == 0:
        raise GraphFormatError("graph6 encodes an empty graph; graphs here are nonnull")
    body = s[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 body for n={n} needs {need} bytes, got {len(body)}"
        )
    bits = 0
    for ch in body:
        bits = (bits << 6) | (ord(ch) - 63)
    pad = 6 * need - nbits
    bits >>= pad
    edges = []
    # bits now holds the upper triangle, most significant bit first:
    # (0,1), (0,2), (1,2), (0,3), ...
    k = nbits - 1
    for col in range(1, n):
        for row in range(col):
            if (bits >> k) & 1:
                edges.append((row, col))
            k -= 1
    return from_edge_list(n, edges)


def encode_graph6(g: Graph) -> str:
    """Encode a graph as a short-form graph6 string (requires n <= 62)."""
    if g.n > 62:
        raise GraphFormatError("short-form graph6 supports at most 62 vertices")
    n = g.n
    bits = 0
    nbits = n * (n - 1) // 2
    k = nbits - 1
    for col in range(1, n):
        for row in range(col):
            if g.adjacent(row, col):
                bits |= 1 << k
            k -= 1
    need = (nbits + 5) // 6
    bits <<= 6 * need - nbits
    chars = [chr(n + 63)]
    for i in range(need - 1, -1, -1):
        chars.append(chr(((bits >> (6 * i)) & 63) + 63))
    return "".join(chars)


def read_edge_list(text: str) -> Graph:
    """Parse the edge-list text format into a graph."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("edge list is empty")
    lineno, header = rows[0]
    if len(header) != 2:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'") from exc
    body = rows[1:]
    if len(body) != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for lineno, fields in body:
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: edge line must be 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: edge line must be 'u v'") from exc
        edges.append((u, v))
    try:
        return from_edge_list(n, edges)
    except GraphFormatError:
        raise
    except Exception as exc:
        raise GraphFormatError(str(exc)) from exc


def write_edge_list(g: Graph) -> str:
    """Serialize a graph in the edge-list text format."""
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
