"""ippkit: exact isometric path partitions at desk scale.

A library and command line for computing minimum partitions of a graph's
vertex set into shortest paths, the matching-number upper bound on that
optimum, and block-level certificates for the graphs that meet the bound
with equality, all verified against independent brute-force oracles on
exhaustive small-graph corpora.
"""

from .graphs import (
    INFINITE,
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    GraphError,
    GraphFormatError,
    InvalidPathError,
    Path,
    all_pairs_distances,
    connected_components,
    from_edge_list,
    induced_subgraph,
    is_connected,
    is_induced_path,
    is_isometric_path,
)
from .formats import decode_graph6, encode_graph6, read_edge_list, write_edge_list
from .partition import (
    MISSING_VERTEX,
    NOT_A_PATH,
    NOT_ISOMETRIC,
    OVERLAP,
    IsometricPathPartition,
    VerifyResult,
    verify_ipp,
)
from .matching import (
    InvalidMatchingError,
    Matching,
    all_maximum_matchings,
    is_mixed_on_edge,
    matching_ipp,
    maximum_matching,
    perfect_matching_avoiding,
    unsaturated_vertices,
)
from .blocks import (
    BlockDecomposition,
    block_decomposition,
    count_even_blocks,
    is_biconnected,
    is_block_graph,
    is_diamond_free_chordal,
)
from .solver import (
    DEFAULT_CONFIG,
    BudgetExceededError,
    PathEnumeration,
    SolverConfig,
    enumerate_isometric_paths,
    find_v_extendable_ipp,
    ipp_bruteforce_oracle,
    ipp_exact,
    ipp_exact_components,
    ipp_lower_bound,
)
from .extremal import (
    ALL_ODD_COMPLETE,
    EXTREMAL,
    NOT_EXTREMAL,
    ONE_EVEN_BLOCK,
    UNDECIDED,
    VIOLATION,
    CertificateMismatchError,
    ComponentClassification,
    ExtremalityCertificate,
    attach_witness,
    certificate_to_dict,
    certificate_to_json,
    check_certificate,
    classify,
    classify_components,
    construct_minimum_ipp_extremal,
    not_extremal_witness,
    peel_odd_leaf_clique,
    reduce_leaf_clique_pair,
)

__version__ = "0.1.0"
