import json

import pytest

from ippkit.extremal import (
    ALL_ODD_COMPLETE,
    EXTREMAL,
    NOT_EXTREMAL,
    ONE_EVEN_BLOCK,
    UNDECIDED,
    VIOLATION,
    CertificateMismatchError,
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
from ippkit.graphs import (
    DisconnectedGraphError,
    GraphError,
    all_pairs_distances,
    from_edge_list,
)
from ippkit.matching import maximum_matching
from ippkit.partition import verify_ipp
from ippkit.solver import SolverConfig, ipp_bruteforce_oracle
from ippkit.corpus import canonical_graph

from helpers import (
    bowtie,
    complete,
    complete_plus_pendant,
    cycle,
    diamond,
    disjoint_union,
    path_graph,
)


def test_classify_triangle_all_odd_complete():
    cert = classify(complete(3))
    assert cert.verdict == EXTREMAL and cert.case == ALL_ODD_COMPLETE
    assert check_certificate(complete(3), cert)


def test_classify_four_cycle_one_even_block():
    cert = classify(cycle(4))
    assert cert.verdict == EXTREMAL and cert.case == ONE_EVEN_BLOCK
    assert cert.sub_certificate.kind == "CYCLE_C4"
    assert check_certificate(cycle(4), cert)


def test_classify_diamond_extremal():
    cert = classify(diamond())
    assert cert.verdict == EXTREMAL
    assert cert.sub_certificate.kind == "DIAMOND"


def test_classify_three_path_not_extremal():
    g = path_graph(3)
    cert = classify(g)
    assert cert.verdict == NOT_EXTREMAL and cert.case == VIOLATION
    assert cert.violation == "TWO_NON_ODD_COMPLETE"
    # the bound really is missed: optimum 1 against 3 - 1
    assert ipp_bruteforce_oracle(g) == 1 < 3 - maximum_matching(g).size


def test_classify_k5_pendant_one_even_block():
    g = complete_plus_pendant(5)
    cert = classify(g)
    assert cert.verdict == EXTREMAL and cert.case == ONE_EVEN_BLOCK
    assert cert.exceptional_block == (0, 5)
    assert ipp_bruteforce_oracle(g) == 3 == g.n - maximum_matching(g).size


def test_classify_odd_non_complete_block():
    cert = classify(cycle(5))
    assert cert.verdict == NOT_EXTREMAL
    assert cert.violation == "ODD_NON_COMPLETE_BLOCK"


def test_classify_even_block_solved_below_bound():
    cert = classify(cycle(6))
    assert cert.verdict == NOT_EXTREMAL
    assert cert.violation == "EVEN_BLOCK_BELOW_BOUND"
    ev = cert.sub_certificate
    assert ev.kind == "SOLVED" and ev.min_ipp.size == 2
    assert check_certificate(cycle(6), cert)


def test_classify_solved_extremal_block():
    # A 6-vertex biconnected even graph meeting the bound without being
    # complete, a 4-cycle, or a diamond, so the exact-solve branch fires.
    g = from_edge_list(
        6,
        [(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
    )
    assert ipp_bruteforce_oracle(g) == g.n - maximum_matching(g).size == 3
    cert = classify(g)
    assert cert.verdict == EXTREMAL and cert.sub_certificate.kind == "SOLVED"
    assert check_certificate(g, cert, resolve=True)


def test_classify_rejects_disconnected():
    with pytest.raises(DisconnectedGraphError):
        classify(from_edge_list(2, []))


def test_classify_budget_exhaustion_is_undecided():
    cert = classify(cycle(6), SolverConfig(node_budget=1))
    assert cert.verdict == UNDECIDED
    assert cert.sub_certificate.kind == "UNRESOLVED"
    assert cert.sub_certificate.lower_bound <= cert.sub_certificate.upper_bound
    assert check_certificate(cycle(6), cert)


def test_classify_matches_oracle(corpus_upto6):
    for g in corpus_upto6:
        cert = classify(g)
        want = ipp_bruteforce_oracle(g) == g.n - maximum_matching(g).size
        assert (cert.verdict == EXTREMAL) == want
        assert check_certificate(g, cert)


def test_classify_components_examples():
    both = classify_components(disjoint_union([complete(3), complete(3)]))
    assert both.verdict == EXTREMAL
    mixed = classify_components(disjoint_union([complete(3), path_graph(3)]))
    assert mixed.verdict == NOT_EXTREMAL
    single = classify_components(complete(1))
    assert single.verdict == EXTREMAL
    assert len(single.components) == 1


def test_classify_components_relabels_to_input_ids():
    g = disjoint_union([path_graph(3), complete(3)])
    result = classify_components(g)
    comp_vertices, cert = result.components[1]
    assert comp_vertices == (3, 4, 5)
    assert cert.blocks == ((3, 4, 5),)


def test_construct_minimum_for_even_extremal():
    g = cycle(4)
    part = construct_minimum_ipp_extremal(g, classify(g))
    assert part.size == 2
    assert all(p.length == 1 for p in part.paths)
    assert verify_ipp(g, all_pairs_distances(g), part)


def test_construct_minimum_for_odd_extremal():
    g = complete(3)
    part = construct_minimum_ipp_extremal(g, classify(g))
    assert part.size == 2
    assert sorted(p.length for p in part.paths) == [0, 1]
    b = bowtie()
    part_b = construct_minimum_ipp_extremal(b, classify(b))
    assert part_b.size == 3 == ipp_bruteforce_oracle(b)
    assert verify_ipp(b, all_pairs_distances(b), part_b)


def test_construct_minimum_rejects_mismatch():
    with pytest.raises(CertificateMismatchError):
        construct_minimum_ipp_extremal(path_graph(3), classify(path_graph(3)))
    with pytest.raises(CertificateMismatchError):
        construct_minimum_ipp_extremal(path_graph(3), classify(complete(3)))


def test_reduce_leaf_clique_pair_drops_both_counts():
    g = complete_plus_pendant(5)
    reduced = reduce_leaf_clique_pair(g, (0, 1, 2, 3, 4), 1, 2)
    assert reduced.n == 4
    assert ipp_bruteforce_oracle(g) == ipp_bruteforce_oracle(reduced) + 1
    assert maximum_matching(g).size == maximum_matching(reduced).size + 1


def test_reduce_leaf_clique_pair_on_bowtie():
    reduced = reduce_leaf_clique_pair(bowtie(), (0, 1, 2), 0, 1)
    assert canonical_graph(reduced) == canonical_graph(complete(3))
    assert ipp_bruteforce_oracle(bowtie()) == 3 == ipp_bruteforce_oracle(reduced) + 1


def test_reduce_leaf_clique_pair_validation():
    g = complete_plus_pendant(5)
    clique = (0, 1, 2, 3, 4)
    with pytest.raises(GraphError):
        reduce_leaf_clique_pair(g, clique, 1, 1)
    with pytest.raises(GraphError):
        reduce_leaf_clique_pair(g, clique, 0, 1)  # 0 is the cut vertex
    with pytest.raises(GraphError):
        reduce_leaf_clique_pair(g, (1, 2, 3), 1, 2)  # not a block
    with pytest.raises(GraphError):
        reduce_leaf_clique_pair(cycle(6), (0, 1, 2, 3, 4, 5), 1, 2)  # not a clique


def test_peel_odd_leaf_clique_examples():
    assert canonical_graph(peel_odd_leaf_clique(bowtie(), (0, 1, 2))) == canonical_graph(
        complete(3)
    )
    g = complete_plus_pendant(5)
    peeled = peel_odd_leaf_clique(g, (0, 1, 2, 3, 4))
    assert canonical_graph(peeled) == canonical_graph(complete(2))
    assert classify(g).verdict == classify(peeled).verdict == EXTREMAL


def test_peel_odd_leaf_clique_chain():
    chain = from_edge_list(
        7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)]
    )
    once = peel_odd_leaf_clique(chain, (0, 1, 2))
    twice = peel_odd_leaf_clique(once, tuple(sorted(once.n - 1 - i for i in range(3))))
    assert canonical_graph(twice) == canonical_graph(complete(3))


def test_peel_rejects_even_clique():
    with pytest.raises(GraphError):
        peel_odd_leaf_clique(complete_plus_pendant(5), (0, 5))


def test_peel_preserves_extremality(corpus_upto6):
    from ippkit.blocks import block_decomposition, is_complete_on

    for g in corpus_upto6:
        dec = block_decomposition(g)
        for i in dec.leaf_block_indices:
            b = dec.blocks[i]
            if len(b) % 2 == 1 and is_complete_on(g, b):
                peeled = peel_odd_leaf_clique(g, b)
                assert (classify(g).verdict == EXTREMAL) == (
                    classify(peeled).verdict == EXTREMAL
                )
                break


def test_odd_extremal_graphs_are_odd_block_graphs(db):
    from ippkit.blocks import block_decomposition, is_complete_on, is_diamond_free_chordal

    for e in db[0]:
        if e.n % 2 == 0 or e.oracle != e.n - e.nu:
            continue
        dec = block_decomposition(e.g)
        assert all(len(b) % 2 == 1 and is_complete_on(e.g, b) for b in dec.blocks)
        assert is_diamond_free_chordal(e.g)


def test_even_extremal_graphs_have_one_even_exception(db):
    from ippkit.blocks import block_decomposition, is_complete_on

    for e in db[0]:
        if e.n % 2 == 1 or e.oracle != e.n - e.nu:
            continue
        dec = block_decomposition(e.g)
        others = [
            b for b in dec.blocks if not (len(b) % 2 == 1 and is_complete_on(e.g, b))
        ]
        assert len(others) == 1 and len(others[0]) % 2 == 0


def test_block_graph_extremality_counts_even_blocks(corpus_upto6):
    from ippkit.blocks import block_decomposition, count_even_blocks, is_block_graph

    for g in corpus_upto6:
        if not is_block_graph(g):
            continue
        extremal = ipp_bruteforce_oracle(g) == g.n - maximum_matching(g).size
        assert extremal == (count_even_blocks(block_decomposition(g)) <= 1)


def test_witness_for_non_extremal():
    g = path_graph(3)
    part = not_extremal_witness(g)
    assert part.size == 1 < 3 - maximum_matching(g).size
    cert = attach_witness(g, classify(g))
    assert cert.witness_ipp is not None
    assert verify_ipp(g, all_pairs_distances(g), cert.witness_ipp)


def test_witness_rejects_extremal_graph():
    with pytest.raises(CertificateMismatchError):
        not_extremal_witness(complete(3))


def test_witness_handles_disconnected():
    g = disjoint_union([path_graph(3), path_graph(3)])
    part = not_extremal_witness(g)
    assert part.size == 2 < g.n - maximum_matching(g).size
    assert verify_ipp(g, all_pairs_distances(g), part)


def test_certificate_json_schema_and_determinism():
    cert = classify(complete_plus_pendant(5))
    blob = certificate_to_json(cert)
    assert blob == certificate_to_json(classify(complete_plus_pendant(5)))
    data = json.loads(blob)
    assert set(data) >= {
        "verdict",
        "case",
        "blocks",
        "exceptional_block",
        "sub_certificate",
        "witness_ipp",
    }
    assert data["verdict"] == "EXTREMAL"
    assert data["exceptional_block"] == [0, 5]
    assert {"parity", "vertices"} <= set(data["blocks"][0])
    wit = certificate_to_dict(attach_witness(path_graph(3), classify(path_graph(3))))
    assert wit["witness_ipp"] == [[0, 1, 2]]
