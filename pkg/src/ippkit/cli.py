"""Batch command line front end.

Four subcommands over streams of graphs: ``exact`` (minimum partition
sizes), ``classify`` (block-level extremality certificates), ``survey``
(biconnected even graphs meeting the bound), and ``verify`` (the
cross-module invariant suites over a corpus).  Output is JSON Lines by
default, one record per graph or per invariant family, in input order;
``--table`` renders columns instead.

Exit codes: 0 all proven/pass, 2 parse error, 3 budget exhausted,
4 invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable

from .blocks import (
    block_decomposition,
    count_even_blocks,
    is_biconnected,
    is_block_graph,
    is_complete_on,
    is_diamond_free_chordal,
)
from .corpus import FIXTURE_NAMES, corpus_lines, fixture_graph
from .extremal import (
    EXTREMAL,
    NOT_EXTREMAL,
    UNDECIDED,
    certificate_to_dict,
    classify,
    classify_components,
)
from .formats import decode_graph6, read_edge_list
from .graphs import (
    Graph,
    GraphError,
    all_pairs_distances,
    connected_components,
    induced_subgraph,
    is_connected,
)
from .matching import maximum_matching
from .partition import verify_ipp
from .solver import (
    BudgetExceededError,
    SolverConfig,
    ipp_bruteforce_oracle,
    ipp_exact,
    ipp_exact_components,
    ipp_lower_bound,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_INVARIANT = 4

_RECORD_FIELDS = (
    "input_id",
    "family",
    "n",
    "m",
    "nu",
    "ipp",
    "lower_bound",
    "upper_bound",
    "certificate",
    "checked",
    "counterexample",
    "status",
    "error",
    "elapsed",
)


@dataclass
class RunReport:
    """Per-graph (or per-family) result records for one command run."""

    command: str
    records: list[dict]

    def exit_code(self) -> int:
        if any(r.get("status") == "ERROR" for r in self.records):
            return EXIT_PARSE
        if self.command == "verify":
            if any(r.get("status") == "FAIL" for r in self.records):
                return EXIT_INVARIANT
            if any(r.get("status") == "BUDGET" for r in self.records):
                return EXIT_BUDGET
            return EXIT_OK
        if any(r.get("status") == "BOUNDS_ONLY" for r in self.records):
            return EXIT_BUDGET
        return EXIT_OK

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)

    def to_table(self) -> str:
        if not self.records:
            return ""
        cols = sorted({k for r in self.records for k in r}, key=_column_order)
        rows = [[_cell(r.get(c)) for c in cols] for r in self.records]
        widths = [max(len(c), *(len(row[i]) for row in rows)) for i, c in enumerate(cols)]
        out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        for row in rows:
            out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        return "\n".join(out) + "\n"


def _column_order(name: str) -> tuple[int, str]:
    try:
        return (_RECORD_FIELDS.index(name), "")
    except ValueError:
        return (len(_RECORD_FIELDS), name)


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


@dataclass
class _Input:
    input_id: str
    graph: Graph | None
    error: str | None = None
    expected_ipp: int | None = None
    line: str | None = None


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r") as fh:
        return fh.read()


def _load_inputs(files: Iterable[str], fmt: str, annotated: bool = False) -> list[_Input]:
    inputs: list[_Input] = []
    for path in files:
        if path.startswith("fixture:"):
            name = path.split(":", 1)[1]
            try:
                inputs.append(_Input(path, fixture_graph(name)))
            except FileNotFoundError as exc:
                inputs.append(_Input(path, None, str(exc)))
            continue
        if path.startswith("corpus:"):
            name = path.split(":", 1)[1]
            try:
                lines = corpus_lines(name)
            except FileNotFoundError as exc:
                inputs.append(_Input(path, None, str(exc)))
                continue
            for i, line in enumerate(lines, start=1):
                inputs.append(_Input(f"{path}:{i}", decode_graph6(line), line=line))
            continue
        if fmt == "edgelist":
            try:
                inputs.append(_Input(path, read_edge_list(_read_source(path))))
            except (OSError, GraphError) as exc:
                inputs.append(_Input(path, None, str(exc)))
            continue
        try:
            text = _read_source(path)
        except OSError as exc:
            inputs.append(_Input(path, None, str(exc)))
            continue
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            input_id = f"{path}:{lineno}"
            expected: int | None = None
            token = line
            if annotated:
                parts = line.split()
                token = parts[0]
                if len(parts) == 2:
                    try:
                        expected = int(parts[1])
                    except ValueError:
                        inputs.append(
                            _Input(input_id, None, f"bad expected value {parts[1]!r}", line=line)
                        )
                        continue
                elif len(parts) > 2:
                    inputs.append(_Input(input_id, None, "too many fields", line=line))
                    continue
            try:
                inputs.append(
                    _Input(input_id, decode_graph6(token), expected_ipp=expected, line=token)
                )
            except GraphError as exc:
                inputs.append(_Input(input_id, None, str(exc), line=token))
    return inputs


def _error_record(inp: _Input) -> dict:
    return {
        "input_id": inp.input_id,
        "error": inp.error,
        "status": "ERROR",
        "n": None,
        "m": None,
        "nu": None,
        "ipp": None,
        "lower_bound": None,
        "upper_bound": None,
        "certificate": None,
        "elapsed": None,
    }


def _solve_exact(input_id: str, g: Graph, cfg: SolverConfig, timings: bool) -> dict:
    t0 = time.monotonic()
    nu = maximum_matching(g).size
    lower = 0
    upper = 0
    total = 0
    proven = True
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        d = all_pairs_distances(sub)
        lb = ipp_lower_bound(sub, d)
        try:
            part = ipp_exact(sub, cfg)
        except BudgetExceededError as exc:
            proven = False
            lower += max(lb, exc.lower_bound)
            upper += exc.upper_bound
            continue
        lower += lb
        upper += part.size
        total += part.size
    record = {
        "input_id": input_id,
        "n": g.n,
        "m": g.edge_count,
        "nu": nu,
        "ipp": total if proven else None,
        "lower_bound": lower,
        "upper_bound": upper,
        "certificate": None,
        "status": "PROVEN" if proven else "BOUNDS_ONLY",
        "elapsed": round(time.monotonic() - t0, 6) if timings else None,
    }
    return record


def _solve_classify(
    input_id: str, g: Graph, cfg: SolverConfig, witness: bool, timings: bool
) -> dict:
    t0 = time.monotonic()
    nu = maximum_matching(g).size
    if is_connected(g):
        cert = classify(g, cfg)
        verdict = cert.verdict
        cert_json = certificate_to_dict(cert)
    else:
        result = classify_components(g, cfg)
        verdict = result.verdict
        cert_json = {
            "verdict": verdict,
            "components": [
                {"vertices": list(comp), "certificate": certificate_to_dict(c)}
                for comp, c in result.components
            ],
        }
    if witness and verdict == NOT_EXTREMAL:
        try:
            part = ipp_exact_components(g, cfg)
            if part.size < g.n - nu:
                cert_json["witness_ipp"] = [list(p.vertices) for p in part.paths]
        except BudgetExceededError:
            pass
    return {
        "input_id": input_id,
        "n": g.n,
        "m": g.edge_count,
        "nu": nu,
        "ipp": None,
        "lower_bound": None,
        "upper_bound": g.n - nu,
        "certificate": cert_json,
        "status": "BOUNDS_ONLY" if verdict == UNDECIDED else "PROVEN",
        "elapsed": round(time.monotonic() - t0, 6) if timings else None,
    }


def _solve_survey(input_id: str, g: Graph, cfg: SolverConfig, timings: bool) -> dict | None:
    if g.n % 2 == 1 or not is_biconnected(g):
        return None
    t0 = time.monotonic()
    nu = maximum_matching(g).size
    d = all_pairs_distances(g)
    try:
        part = ipp_exact(g, cfg)
    except BudgetExceededError as exc:
        return {
            "input_id": input_id,
            "n": g.n,
            "m": g.edge_count,
            "nu": nu,
            "ipp": None,
            "lower_bound": exc.lower_bound,
            "upper_bound": exc.upper_bound,
            "certificate": None,
            "status": "BOUNDS_ONLY",
            "elapsed": round(time.monotonic() - t0, 6) if timings else None,
        }
    if part.size != g.n - nu:
        return None
    return {
        "input_id": input_id,
        "n": g.n,
        "m": g.edge_count,
        "nu": nu,
        "ipp": part.size,
        "lower_bound": ipp_lower_bound(g, d),
        "upper_bound": g.n - nu,
        "certificate": None,
        "status": "PROVEN",
        "elapsed": round(time.monotonic() - t0, 6) if timings else None,
    }


def _worker(task: tuple) -> dict | None:
    kind, input_id, n, masks, cfg_tuple, flags = task
    g = Graph(n, masks)
    cfg = SolverConfig(*cfg_tuple)
    if kind == "exact":
        return _solve_exact(input_id, g, cfg, flags["timings"])
    if kind == "classify":
        return _solve_classify(input_id, g, cfg, flags["witness"], flags["timings"])
    return _solve_survey(input_id, g, cfg, flags["timings"])


def _run_graph_command(
    command: str, inputs: list[_Input], cfg: SolverConfig, jobs: int, flags: dict
) -> RunReport:
    records: list[dict] = []
    tasks = []
    slots: list[tuple[str, _Input | None]] = []
    for inp in inputs:
        if inp.graph is None:
            slots.append(("error", inp))
        else:
            slots.append(("task", inp))
            tasks.append(
                (
                    command,
                    inp.input_id,
                    inp.graph.n,
                    inp.graph.masks,
                    (cfg.max_paths_per_pair, cfg.node_budget, cfg.time_budget),
                    flags,
                )
            )
    if jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, tasks, chunksize=8))
    else:
        results = [_worker(t) for t in tasks]
    it = iter(results)
    for kind, inp in slots:
        if kind == "error":
            records.append(_error_record(inp))
        else:
            rec = next(it)
            if rec is not None:
                records.append(rec)
    return RunReport(command, records)


# ---------------------------------------------------------------------------
# verify: invariant families over a corpus


@dataclass
class _CorpusFacts:
    """Per-graph quantities the invariant families compare, computed once."""

    inp: _Input
    n: int
    nu: int
    exact_size: int
    exact_valid: bool
    lower: int
    extremal: bool
    verdict: str
    blocks: tuple
    even_blocks: int
    all_odd_complete: bool
    non_odd_complete: tuple
    block_graph: bool
    dfc: bool


def _corpus_facts(inp: _Input, cfg: SolverConfig) -> _CorpusFacts:
    g = inp.graph
    d = all_pairs_distances(g)
    nu = maximum_matching(g).size
    part = ipp_exact(g, cfg)
    if g.n <= 10:
        extremal = ipp_bruteforce_oracle(g) == g.n - nu
    else:
        extremal = part.size == g.n - nu
    cert = classify(g, cfg)
    if cert.verdict == UNDECIDED:
        raise BudgetExceededError("classification unresolved", 0, g.n, None)
    dec = block_decomposition(g)
    non_odd = tuple(
        b for b in dec.blocks if not (len(b) % 2 == 1 and is_complete_on(g, b))
    )
    return _CorpusFacts(
        inp=inp,
        n=g.n,
        nu=nu,
        exact_size=part.size,
        exact_valid=bool(verify_ipp(g, d, part)),
        lower=ipp_lower_bound(g, d),
        extremal=extremal,
        verdict=cert.verdict,
        blocks=dec.blocks,
        even_blocks=count_even_blocks(dec),
        all_odd_complete=not non_odd,
        non_odd_complete=non_odd,
        block_graph=is_block_graph(g),
        dfc=is_diamond_free_chordal(g),
    )


def _family_sandwich(facts, cfg):
    for f in facts:
        if not (f.lower <= f.exact_size <= f.n - f.nu) or not f.exact_valid:
            return f.inp
    return None


def _family_extremal_blocks(facts, cfg):
    for f in facts:
        if (f.verdict == EXTREMAL) != f.extremal:
            return f.inp
    return None


def _family_parity(facts, cfg):
    for f in facts:
        if (f.n - (f.even_blocks + 1)) % 2 != 0:
            return f.inp
    return None


def _family_blockgraph_equivalence(facts, cfg):
    for f in facts:
        if f.block_graph != f.dfc:
            return f.inp
    return None


def _family_odd_extremal(facts, cfg):
    for f in facts:
        if f.n % 2 == 0 or not f.extremal:
            continue
        if not f.all_odd_complete or not f.dfc:
            return f.inp
    return None


def _family_even_extremal(facts, cfg):
    for f in facts:
        if f.n % 2 == 1 or not f.extremal:
            continue
        if len(f.non_odd_complete) != 1 or len(f.non_odd_complete[0]) % 2 != 0:
            return f.inp
    return None


def _family_blockgraph_extremality(facts, cfg):
    for f in facts:
        if f.block_graph and f.extremal != (f.even_blocks <= 1):
            return f.inp
    return None


def _family_stated_values(facts, cfg):
    for f in facts:
        if f.inp.expected_ipp is not None and f.exact_size != f.inp.expected_ipp:
            return f.inp
    return None


_FAMILIES = (
    ("sandwich", _family_sandwich),
    ("extremal-blocks", _family_extremal_blocks),
    ("even-block-parity", _family_parity),
    ("blockgraph-equivalence", _family_blockgraph_equivalence),
    ("odd-extremal-structure", _family_odd_extremal),
    ("even-extremal-structure", _family_even_extremal),
    ("blockgraph-extremality", _family_blockgraph_extremality),
    ("stated-values", _family_stated_values),
)


def _load_corpus(sources: list[str]) -> tuple[list[_Input], list[_Input]]:
    import os

    entries: list[_Input] = []
    errors: list[_Input] = []
    for source in sources:
        if os.path.exists(source) or source == "-":
            loaded = _load_inputs([source], "graph6", annotated=True)
        else:
            try:
                lines = corpus_lines(source)
            except FileNotFoundError as exc:
                errors.append(_Input(source, None, str(exc)))
                continue
            loaded = []
            for i, line in enumerate(lines, start=1):
                try:
                    loaded.append(_Input(f"{source}:{i}", decode_graph6(line), line=line))
                except GraphError as exc:
                    loaded.append(_Input(f"{source}:{i}", None, str(exc), line=line))
        for inp in loaded:
            if inp.graph is None:
                errors.append(inp)
            elif not is_connected(inp.graph):
                errors.append(
                    _Input(inp.input_id, None, "corpus graph is disconnected", line=inp.line)
                )
            else:
                entries.append(inp)
    return entries, errors


def _run_verify(sources: list[str], cfg: SolverConfig) -> RunReport:
    entries, errors = _load_corpus(sources)
    records = [_error_record(e) for e in errors]
    if not entries and not errors:
        records.append(
            {"input_id": ",".join(sources), "error": "empty corpus", "status": "ERROR"}
        )
    if not entries:
        return RunReport("verify", records)
    facts = []
    budget_hit = False
    for inp in entries:
        try:
            facts.append(_corpus_facts(inp, cfg))
        except BudgetExceededError:
            budget_hit = True
    for name, fn in _FAMILIES:
        if budget_hit:
            records.append(
                {"family": name, "status": "BUDGET", "checked": len(facts), "counterexample": None}
            )
            continue
        checked = len(facts)
        if name == "stated-values":
            checked = sum(1 for f in facts if f.inp.expected_ipp is not None)
        counterexample = fn(facts, cfg)
        records.append(
            {
                "family": name,
                "status": "PASS" if counterexample is None else "FAIL",
                "checked": checked,
                "counterexample": counterexample.line if counterexample else None,
            }
        )
    return RunReport("verify", records)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ippkit",
        description="Exact isometric path partitions, extremality certificates, "
        "and corpus verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("exact", "minimum partition size per input graph"),
        ("classify", "block-level extremality certificate per input graph"),
        ("survey", "biconnected even graphs meeting the matching bound"),
        ("verify", "run the invariant suites over a graph6 corpus"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "files",
            nargs="+",
            metavar="FILE",
            help="input files; '-' reads standard input; fixture:NAME uses a "
            f"bundled fixture ({', '.join(FIXTURE_NAMES)}); verify also accepts "
            "bundled corpus names like n6 or le7",
        )
        p.add_argument(
            "--format",
            choices=("graph6", "edgelist"),
            default="graph6",
            help="input format (default graph6, one graph per line)",
        )
        p.add_argument("--jobs", type=int, default=1, help="parallel workers across graphs")
        p.add_argument("--node-budget", type=int, default=SolverConfig().node_budget)
        p.add_argument("--time-budget", type=float, default=SolverConfig().time_budget)
        p.add_argument("--max-paths", type=int, default=SolverConfig().max_paths_per_pair)
        p.add_argument("--table", action="store_true", help="columns instead of JSON lines")
        p.add_argument(
            "--witness",
            action="store_true",
            help="classify only: attach a partition beating the bound to "
            "NOT_EXTREMAL certificates (needs a whole-graph solve)",
        )
        p.add_argument(
            "--timings",
            action="store_true",
            help="fill the elapsed field (off by default so output is "
            "byte-identical across runs)",
        )
    return parser


def run(argv: list[str] | None = None) -> tuple[RunReport, str]:
    args = build_parser().parse_args(argv)
    cfg = SolverConfig(
        max_paths_per_pair=args.max_paths,
        node_budget=args.node_budget,
        time_budget=args.time_budget,
    )
    if args.command == "verify":
        report = _run_verify(args.files, cfg)
    else:
        annotated = False
        inputs = _load_inputs(args.files, args.format, annotated)
        flags = {"witness": args.witness, "timings": args.timings}
        report = _run_graph_command(args.command, inputs, cfg, args.jobs, flags)
    text = report.to_table() if args.table else report.to_jsonl()
    return report, text


def main(argv: list[str] | None = None) -> int:
    report, text = run(argv)
    sys.stdout.write(text)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
