from __future__ import annotations

from dataclasses import dataclass

import pytest

from ippkit.blocks import block_decomposition, count_even_blocks, is_block_graph
from ippkit.corpus import bundled_connected
from ippkit.extremal import check_certificate, classify
from ippkit.formats import encode_graph6
from ippkit.graphs import all_pairs_distances
from ippkit.matching import maximum_matching
from ippkit.partition import verify_ipp
from ippkit.solver import ipp_bruteforce_oracle, ipp_exact, ipp_lower_bound

_criterion_lines: list[tuple[int, str]] = []


def record_criterion(number: int, name: str, ok: bool) -> None:
    line = f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'}"
    _criterion_lines.append((number, line))
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_criterion_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus_by_n() -> dict[int, list]:
    return {n: bundled_connected(n) for n in range(1, 9)}


@pytest.fixture(scope="session")
def corpus_upto7(corpus_by_n) -> list:
    return [g for n in range(1, 8) for g in corpus_by_n[n]]


@pytest.fixture(scope="session")
def corpus_upto6(corpus_by_n) -> list:
    return [g for n in range(1, 7) for g in corpus_by_n[n]]


@dataclass
class Entry:
    """Everything the exhaustive cross-checks need about one corpus graph,
    computed once per session."""

    g: object
    g6: str
    n: int
    nu: int
    oracle: int
    exact_size: int
    exact_valid: bool
    lower: int
    even_blocks: int
    block_graph: bool
    verdict: str
    cert_ok: bool


@pytest.fixture(scope="session")
def db(corpus_by_n):
    """Oracle, exact solver, classifier, and matching results for every
    connected graph with at most eight vertices, plus the build time."""
    import time

    t0 = time.monotonic()
    entries: list[Entry] = []
    for n in range(1, 9):
        for g in corpus_by_n[n]:
            d = all_pairs_distances(g)
            nu = maximum_matching(g).size
            part = ipp_exact(g)
            cert = classify(g)
            entries.append(
                Entry(
                    g=g,
                    g6=encode_graph6(g),
                    n=n,
                    nu=nu,
                    oracle=ipp_bruteforce_oracle(g),
                    exact_size=part.size,
                    exact_valid=bool(verify_ipp(g, d, part)),
                    lower=ipp_lower_bound(g, d),
                    even_blocks=count_even_blocks(block_decomposition(g)),
                    block_graph=is_block_graph(g),
                    verdict=cert.verdict,
                    cert_ok=check_certificate(g, cert),
                )
            )
    return entries, time.monotonic() - t0
