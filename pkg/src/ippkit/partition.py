"""Partitions of a graph's vertex set into isometric paths, plus the
verifier every other module leans on."""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    DistanceMatrix,
    Graph,
    InvalidPathError,
    Path,
    is_isometric_path,
)

# Reason codes reported by verify_ipp.
OVERLAP = "OVERLAP"
MISSING_VERTEX = "MISSING_VERTEX"
NOT_A_PATH = "NOT_A_PATH"
NOT_ISOMETRIC = "NOT_ISOMETRIC"


@dataclass(frozen=True)
class IsometricPathPartition:
    """A collection of paths meant to partition V(G) into isometric paths."""

    paths: tuple[Path, ...]

    @property
    def size(self) -> int:
        return len(self.paths)

    def covered_vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p.vertices)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_ipp(g: Graph, d: DistanceMatrix, ipp: IsometricPathPartition) -> VerifyResult:
    """Check that ``ipp`` is a genuine isometric path partition of ``g``.

    Never raises; a failing partition comes back with a reason code
    (NOT_A_PATH, NOT_ISOMETRIC, OVERLAP, or MISSING_VERTEX).
    """
    for p in ipp.paths:
        try:
            if not is_isometric_path(g, d, p):
                return VerifyResult(False, NOT_ISOMETRIC)
        except InvalidPathError:
            return VerifyResult(False, NOT_A_PATH)
    seen = 0
    for p in ipp.paths:
        for v in p.vertices:
            if (seen >> v) & 1:
                return VerifyResult(False, OVERLAP)
            seen |= 1 << v
    if seen != (1 << g.n) - 1:
        return VerifyResult(False, MISSING_VERTEX)
    return VerifyResult(True)
