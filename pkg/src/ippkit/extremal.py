"""Deciding whether a graph meets the matching upper bound with equality,
i.e. whether ipp(G) = |V(G)| - nu(G).

The decision is block-local: the bound is met exactly when every block is
an odd complete graph, except that one block may instead be even and meet
the bound itself.  Even complete blocks, the 4-cycle, and the diamond are
recognized structurally; any other even block is settled by one exact
solve of that block alone, never of the whole graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Sequence

from .blocks import block_decomposition, is_complete_on, require_leaf_clique
from .graphs import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    Path,
    all_pairs_distances,
    connected_components,
    induced_subgraph,
)
from .matching import Matching, matching_ipp, maximum_matching, perfect_matching_avoiding
from .partition import IsometricPathPartition, verify_ipp
from .solver import (
    DEFAULT_CONFIG,
    BudgetExceededError,
    SolverConfig,
    ipp_exact,
    ipp_exact_components,
)

EXTREMAL = "EXTREMAL"
NOT_EXTREMAL = "NOT_EXTREMAL"
UNDECIDED = "UNDECIDED"

ALL_ODD_COMPLETE = "ALL_ODD_COMPLETE"
ONE_EVEN_BLOCK = "ONE_EVEN_BLOCK"
VIOLATION = "VIOLATION"

# Sub-certificate kinds for the exceptional even block.
EVEN_COMPLETE = "EVEN_COMPLETE"
CYCLE_C4 = "CYCLE_C4"
DIAMOND = "DIAMOND"
SOLVED = "SOLVED"
UNRESOLVED = "UNRESOLVED"

# Violation kinds.
TWO_NON_ODD_COMPLETE = "TWO_NON_ODD_COMPLETE"
ODD_NON_COMPLETE_BLOCK = "ODD_NON_COMPLETE_BLOCK"
EVEN_BLOCK_BELOW_BOUND = "EVEN_BLOCK_BELOW_BOUND"


class CertificateMismatchError(GraphError):
    """Certificate does not fit the graph it is being used with."""


@dataclass(frozen=True)
class BlockEvidence:
    """How the exceptional even block was settled.

    For SOLVED, ``min_ipp`` is a minimum partition of the block and
    ``max_matching`` a maximum matching of it, both in the labels of the
    original graph.  For UNRESOLVED (budget ran out) only the bounds are
    known.
    """

    kind: str
    min_ipp: IsometricPathPartition | None = None
    max_matching: Matching | None = None
    lower_bound: int | None = None
    upper_bound: int | None = None


@dataclass(frozen=True)
class ExtremalityCertificate:
    """Verdict plus re-checkable evidence.

    ``blocks`` always records the full decomposition.  For a NOT_EXTREMAL
    verdict ``violation`` names the offending structure; ``witness_ipp``
    (a partition of the whole graph beating the bound) is attached lazily
    by :func:`not_extremal_witness` since it needs a whole-graph solve.
    """

    verdict: str
    case: str
    blocks: tuple[tuple[int, ...], ...]
    exceptional_block: tuple[int, ...] | None = None
    sub_certificate: BlockEvidence | None = None
    violation: str | None = None
    violation_blocks: tuple[tuple[int, ...], ...] = ()
    witness_ipp: IsometricPathPartition | None = None


def _is_c4(g: Graph, block: tuple[int, ...]) -> bool:
    # On four vertices, connected and 2-regular pins down the 4-cycle.
    if len(block) != 4:
        return False
    sub, _ = induced_subgraph(g, block)
    return sub.edge_count == 4 and all(sub.degree(v) == 2 for v in range(4))


def _is_diamond(g: Graph, block: tuple[int, ...]) -> bool:
    # Four vertices with five edges is the complete graph minus one edge.
    if len(block) != 4:
        return False
    sub, _ = induced_subgraph(g, block)
    return sub.edge_count == 5


def _lift_partition(part: IsometricPathPartition, back: Sequence[int]) -> IsometricPathPartition:
    return IsometricPathPartition(
        tuple(Path(tuple(back[v] for v in p.vertices)) for p in part.paths)
    )


def _lift_matching(m: Matching, back: Sequence[int]) -> Matching:
    return Matching(
        frozenset(tuple(sorted((back[a], back[b]))) for a, b in m.edges)
    )


def classify(g: Graph, cfg: SolverConfig = DEFAULT_CONFIG) -> ExtremalityCertificate:
    """Decide extremality of a connected graph from its blocks.

    At most the single exceptional block is ever solved exactly; the whole
    graph never is.  Budget exhaustion inside that one solve yields an
    UNDECIDED verdict carrying the bounds that were proven.
    """
    dec = block_decomposition(g)
    offending = tuple(
        b for b in dec.blocks if not (len(b) % 2 == 1 and is_complete_on(g, b))
    )
    if not offending:
        return ExtremalityCertificate(EXTREMAL, ALL_ODD_COMPLETE, dec.blocks)
    if len(offending) >= 2:
        return ExtremalityCertificate(
            NOT_EXTREMAL,
            VIOLATION,
            dec.blocks,
            violation=TWO_NON_ODD_COMPLETE,
            violation_blocks=offending,
        )
    block = offending[0]
    if len(block) % 2 == 1:
        return ExtremalityCertificate(
            NOT_EXTREMAL,
            VIOLATION,
            dec.blocks,
            exceptional_block=block,
            violation=ODD_NON_COMPLETE_BLOCK,
            violation_blocks=(block,),
        )
    if is_complete_on(g, block):
        evidence = BlockEvidence(EVEN_COMPLETE)
    elif _is_c4(g, block):
        evidence = BlockEvidence(CYCLE_C4)
    elif _is_diamond(g, block):
        evidence = BlockEvidence(DIAMOND)
    else:
        sub, back = induced_subgraph(g, block)
        nu_b = maximum_matching(sub).size
        bound = sub.n - nu_b
        try:
            part = ipp_exact(sub, cfg)
        except BudgetExceededError as exc:
            incumbent = (
                _lift_partition(exc.incumbent, back) if exc.incumbent is not None else None
            )
            return ExtremalityCertificate(
                UNDECIDED,
                ONE_EVEN_BLOCK,
                dec.blocks,
                exceptional_block=block,
                sub_certificate=BlockEvidence(
                    UNRESOLVED,
                    min_ipp=incumbent,
                    lower_bound=exc.lower_bound,
                    upper_bound=exc.upper_bound,
                ),
            )
        lifted = _lift_partition(part, back)
        matching = _lift_matching(maximum_matching(sub), back)
        if part.size < bound:
            return ExtremalityCertificate(
                NOT_EXTREMAL,
                VIOLATION,
                dec.blocks,
                exceptional_block=block,
                sub_certificate=BlockEvidence(SOLVED, lifted, matching),
                violation=EVEN_BLOCK_BELOW_BOUND,
                violation_blocks=(block,),
            )
        evidence = BlockEvidence(SOLVED, lifted, matching)
    return ExtremalityCertificate(
        EXTREMAL,
        ONE_EVEN_BLOCK,
        dec.blocks,
        exceptional_block=block,
        sub_certificate=evidence,
    )


@dataclass(frozen=True)
class ComponentClassification:
    """Per-component certificates (in whole-graph labels) plus the global
    verdict, which is EXTREMAL exactly when every component is."""

    components: tuple[tuple[tuple[int, ...], ExtremalityCertificate], ...]
    verdict: str


def classify_components(
    g: Graph, cfg: SolverConfig = DEFAULT_CONFIG
) -> ComponentClassification:
    """Classify each connected component; the bound is met globally iff it
    is met on every component."""
    entries = []
    verdicts = []
    for comp in connected_components(g):
        sub, back = induced_subgraph(g, comp)
        cert = _relabel_certificate(classify(sub, cfg), back)
        entries.append((tuple(comp), cert))
        verdicts.append(cert.verdict)
    if NOT_EXTREMAL in verdicts:
        overall = NOT_EXTREMAL
    elif UNDECIDED in verdicts:
        overall = UNDECIDED
    else:
        overall = EXTREMAL
    return ComponentClassification(tuple(entries), overall)


def _relabel_certificate(
    cert: ExtremalityCertificate, back: Sequence[int]
) -> ExtremalityCertificate:
    def blk(b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(sorted(back[v] for v in b))

    sub = cert.sub_certificate
    if sub is not None:
        sub = BlockEvidence(
            sub.kind,
            _lift_partition(sub.min_ipp, back) if sub.min_ipp is not None else None,
            _lift_matching(sub.max_matching, back) if sub.max_matching is not None else None,
            sub.lower_bound,
            sub.upper_bound,
        )
    return ExtremalityCertificate(
        cert.verdict,
        cert.case,
        tuple(sorted(blk(b) for b in cert.blocks)),
        blk(cert.exceptional_block) if cert.exceptional_block is not None else None,
        sub,
        cert.violation,
        tuple(sorted(blk(b) for b in cert.violation_blocks)),
        _lift_partition(cert.witness_ipp, back) if cert.witness_ipp is not None else None,
    )


def not_extremal_witness(
    g: Graph, cfg: SolverConfig = DEFAULT_CONFIG
) -> IsometricPathPartition:
    """A partition of the whole graph strictly beating |V| - nu.

    Needs a full exact solve (per component), which is why it is not part
    of :func:`classify`.  Raises if the graph actually meets the bound.
    """
    nu = maximum_matching(g).size
    part = ipp_exact_components(g, cfg)
    if part.size >= g.n - nu:
        raise CertificateMismatchError("graph meets the bound; no witness exists")
    return part


def attach_witness(
    g: Graph, cert: ExtremalityCertificate, cfg: SolverConfig = DEFAULT_CONFIG
) -> ExtremalityCertificate:
    if cert.verdict != NOT_EXTREMAL:
        return cert
    return replace(cert, witness_ipp=not_extremal_witness(g, cfg))


def construct_minimum_ipp_extremal(
    g: Graph, cert: ExtremalityCertificate
) -> IsometricPathPartition:
    """Build a minimum partition for a graph certified to meet the bound.

    Even order: any perfect matching, read as two-vertex paths.  Odd
    order: a perfect matching of the graph minus its lowest vertex, plus
    that vertex as a singleton.  Both constructions are optimal exactly
    because the graph is extremal, so their failure modes (no perfect
    matching where one is required) signal a certificate mismatch.
    """
    if cert.verdict != EXTREMAL:
        raise CertificateMismatchError("certificate verdict is not EXTREMAL")
    if not check_certificate(g, cert):
        raise CertificateMismatchError("certificate does not match this graph")
    if g.n % 2 == 0:
        m = maximum_matching(g)
        if 2 * m.size != g.n:
            raise CertificateMismatchError(
                "even graph certified extremal has no perfect matching"
            )
        return matching_ipp(g, m)
    u = 0
    m = perfect_matching_avoiding(g, u)
    if m is None:
        raise CertificateMismatchError(
            "odd graph certified extremal has no perfect matching avoiding a vertex"
        )
    paths = [Path(e) for e in sorted(m.edges)]
    paths.append(Path((u,)))
    return IsometricPathPartition(tuple(paths))


def reduce_leaf_clique_pair(
    g: Graph, clique: tuple[int, ...], x: int, y: int
) -> Graph:
    """Delete two non-cut vertices of a leaf-clique.

    This drops both the optimum and the matching number by exactly one,
    so extremality is preserved in both directions.  The result keeps the
    remaining vertices in their original relative order.
    """
    v = require_leaf_clique(g, clique)
    if x == y:
        raise GraphError("x and y must be distinct")
    if v in (x, y):
        raise GraphError("x and y must differ from the cut vertex")
    cl = set(clique)
    if x not in cl or y not in cl:
        raise GraphError("x and y must belong to the clique")
    sub, _ = induced_subgraph(g, [w for w in range(g.n) if w not in (x, y)])
    return sub


def peel_odd_leaf_clique(g: Graph, clique: tuple[int, ...]) -> Graph:
    """Remove an odd leaf-clique except its cut vertex; extremality of the
    remainder equals extremality of the whole."""
    if len(clique) % 2 == 0:
        raise GraphError("leaf-clique must be odd")
    v = require_leaf_clique(g, clique)
    drop = set(clique) - {v}
    sub, _ = induced_subgraph(g, [w for w in range(g.n) if w not in drop])
    return sub


def check_certificate(
    g: Graph,
    cert: ExtremalityCertificate,
    cfg: SolverConfig = DEFAULT_CONFIG,
    resolve: bool = False,
) -> bool:
    """Re-check a certificate against its graph using only the public
    verification operations.

    With ``resolve`` the exceptional block is solved again, confirming
    minimality claims instead of just evidence consistency.
    """
    try:
        dec = block_decomposition(g)
    except DisconnectedGraphError:
        return False
    if dec.blocks != cert.blocks:
        return False
    odd_complete = [
        b for b in dec.blocks if len(b) % 2 == 1 and is_complete_on(g, b)
    ]
    others = [b for b in dec.blocks if b not in odd_complete]
    if cert.case == ALL_ODD_COMPLETE:
        return cert.verdict == EXTREMAL and not others
    if cert.case == ONE_EVEN_BLOCK:
        if len(others) != 1 or cert.exceptional_block != others[0]:
            return False
        b = others[0]
        if len(b) % 2 == 1:
            return False
        ev = cert.sub_certificate
        if ev is None:
            return False
        if ev.kind == EVEN_COMPLETE:
            return is_complete_on(g, b)
        if ev.kind == CYCLE_C4:
            return _is_c4(g, b)
        if ev.kind == DIAMOND:
            return _is_diamond(g, b)
        if ev.kind == SOLVED:
            if ev.min_ipp is None or ev.max_matching is None:
                return False
            sub, back = induced_subgraph(g, b)
            pos = {orig: i for i, orig in enumerate(back)}
            try:
                local = IsometricPathPartition(
                    tuple(
                        Path(tuple(pos[v] for v in p.vertices)) for p in ev.min_ipp.paths
                    )
                )
                local_m = Matching(
                    frozenset(
                        tuple(sorted((pos[a], pos[b2]))) for a, b2 in ev.max_matching.edges
                    )
                )
            except KeyError:
                return False
            d = all_pairs_distances(sub)
            if not verify_ipp(sub, d, local):
                return False
            if local_m.size != maximum_matching(sub).size:
                return False
            claimed = local.size == sub.n - local_m.size
            if cert.verdict == EXTREMAL and not claimed:
                return False
            if cert.verdict == NOT_EXTREMAL and local.size >= sub.n - local_m.size:
                return False
            if resolve and ipp_exact(sub, cfg).size != local.size:
                return False
            return True
        if ev.kind == UNRESOLVED:
            return cert.verdict == UNDECIDED
        return False
    if cert.case == VIOLATION:
        if cert.verdict != NOT_EXTREMAL:
            return False
        if cert.violation == TWO_NON_ODD_COMPLETE:
            return len(others) >= 2 and set(cert.violation_blocks) == set(others)
        if cert.violation == ODD_NON_COMPLETE_BLOCK:
            return (
                len(others) == 1
                and len(others[0]) % 2 == 1
                and not is_complete_on(g, others[0])
            )
        if cert.violation == EVEN_BLOCK_BELOW_BOUND:
            if len(others) != 1 or len(others[0]) % 2 != 0:
                return False
            ev = cert.sub_certificate
            if ev is None or ev.min_ipp is None or ev.max_matching is None:
                return False
            sub, back = induced_subgraph(g, others[0])
            pos = {orig: i for i, orig in enumerate(back)}
            local = IsometricPathPartition(
                tuple(Path(tuple(pos[v] for v in p.vertices)) for p in ev.min_ipp.paths)
            )
            d = all_pairs_distances(sub)
            if not verify_ipp(sub, d, local):
                return False
            return local.size < sub.n - maximum_matching(sub).size
        return False
    return False


def certificate_to_dict(cert: ExtremalityCertificate) -> dict:
    """JSON-ready form of a certificate, vertex ids in input labeling."""

    def part(p: IsometricPathPartition | None):
        if p is None:
            return None
        return [list(q.vertices) for q in p.paths]

    sub = None
    if cert.sub_certificate is not None:
        ev = cert.sub_certificate
        sub = {
            "kind": ev.kind,
            "min_ipp": part(ev.min_ipp),
            "max_matching": sorted(list(e) for e in ev.max_matching.edges)
            if ev.max_matching is not None
            else None,
        }
        if ev.kind == UNRESOLVED:
            sub["lower_bound"] = ev.lower_bound
            sub["upper_bound"] = ev.upper_bound
    out = {
        "verdict": cert.verdict,
        "case": cert.case,
        "blocks": [
            {"vertices": list(b), "parity": "even" if len(b) % 2 == 0 else "odd"}
            for b in cert.blocks
        ],
        "exceptional_block": list(cert.exceptional_block)
        if cert.exceptional_block is not None
        else None,
        "sub_certificate": sub,
        "witness_ipp": part(cert.witness_ipp),
    }
    if cert.violation is not None:
        out["violation"] = {
            "kind": cert.violation,
            "blocks": [list(b) for b in cert.violation_blocks],
        }
    return out


def certificate_to_json(cert: ExtremalityCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), sort_keys=True)
