"""Command line driver.

Four subcommands: ``gen`` builds a named topology, ``observable`` checks a
measured node set, ``mon`` selects a minimum observable node set, and
``ingest`` builds a hypergraph from a time-series CSV. Every run prints a
report to stdout, JSON by default; reports are byte-identical across runs
with the same flags and seed (wall-clock timing goes to stderr only).

Exit codes: 0 success, 1 bad usage or unreadable input, 2 a resource
budget refused the computation, 3 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Any

from . import __version__
from .correlation import (
    hypergraph_from_timeseries,
    multicorrelation_table,
    read_timeseries_csv,
)
from .errors import ResourceLimitError
from .hypergraph import (
    UniformHypergraph,
    gen_complete,
    gen_hyperchain,
    gen_hyperring,
    gen_hyperstar,
)
from .mon import MonOptions, brute_force_mon, minimum_observable_nodes
from .observability import RankConfig, is_locally_weakly_observable
from .scalars import PRIME

GENERATORS = {
    "chain": gen_hyperchain,
    "ring": gen_hyperring,
    "star": gen_hyperstar,
    "complete": gen_complete,
}


def _graph_summary(g: UniformHypergraph) -> dict[str, Any]:
    histogram: dict[str, int] = {}
    for deg in g.degrees().values():
        histogram[str(deg)] = histogram.get(str(deg), 0) + 1
    return {
        "n": g.n,
        "k": g.k,
        "num_edges": g.num_edges,
        "degree_histogram": histogram,
    }


def _file_input(path: str) -> dict[str, Any]:
    data = Path(path).read_bytes()
    return {"path": path, "sha256": hashlib.sha256(data).hexdigest()}


def _load_hypergraph(path: str) -> UniformHypergraph:
    return UniformHypergraph.from_json(Path(path).read_text())


def _parse_nodes(raw: str, n: int) -> list[int]:
    if raw.strip().lower() == "all":
        return list(range(1, n + 1))
    try:
        nodes = [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise ValueError(
            f"--nodes wants a comma list of integers or 'all', got {raw!r}"
        ) from None
    if not nodes:
        raise ValueError("--nodes selected nothing")
    if len(set(nodes)) != len(nodes):
        raise ValueError(f"--nodes has duplicates: {raw}")
    for i in nodes:
        if not 1 <= i <= n:
            raise ValueError(f"node {i} outside 1..{n}")
    return nodes


def _cmd_gen(args: argparse.Namespace) -> dict[str, Any]:
    g = GENERATORS[args.family](args.n, args.k)
    report = {
        "command": "gen",
        "version": __version__,
        "parameters": {"family": args.family, "n": args.n, "k": args.k},
        "hypergraph": _graph_summary(g),
        "result": g.to_dict(),
    }
    if args.out:
        Path(args.out).write_text(g.to_json())
        report["out"] = args.out
    return report


def _cmd_observable(args: argparse.Namespace) -> dict[str, Any]:
    g = _load_hypergraph(args.hypergraph)
    nodes = _parse_nodes(args.nodes, g.n)
    cfg = RankConfig(trials=args.trials, seed=args.seed, depth=args.depth)
    outcome = is_locally_weakly_observable(g, nodes, cfg)
    report = {
        "command": "observable",
        "version": __version__,
        "input": _file_input(args.hypergraph),
        "parameters": {
            "nodes": nodes,
            "depth": outcome.depth,
            "trials": args.trials,
            "seed": args.seed,
            "field_modulus": PRIME,
        },
        "hypergraph": _graph_summary(g),
        "result": {
            "verdict": outcome.verdict,
            "observable": outcome.observable,
            "rank": outcome.rank,
            "n": outcome.n,
        },
    }
    if args.out:
        Path(args.out).write_text(_render_json(report))
        report["out"] = args.out
    return report


def _cmd_mon(args: argparse.Namespace) -> dict[str, Any]:
    g = _load_hypergraph(args.hypergraph)
    opts = MonOptions(
        depth=args.depth,
        trials=args.trials,
        seed=args.seed,
        tie_break=args.tie_break,
        per_component=args.per_component == "on",
    )
    res = minimum_observable_nodes(g, opts)
    result: dict[str, Any] = {
        "selected": list(res.selected),
        "size": res.size,
        "rank_trace": list(res.rank_trace),
        "verdict": res.verdict,
        "components": [
            {
                "nodes": list(c.nodes),
                "selected": list(c.selected),
                "rank_trace": list(c.rank_trace),
                "verdict": c.verdict,
            }
            for c in res.components
        ],
    }
    if args.brute_force:
        exact = brute_force_mon(g, opts)
        result["brute_force"] = {
            "selected": list(exact.selected),
            "size": exact.size,
            "verdict": exact.verdict,
            "matches_greedy_size": exact.size == res.size,
        }
    report = {
        "command": "mon",
        "version": __version__,
        "input": _file_input(args.hypergraph),
        "parameters": {
            "depth": args.depth,
            "trials": args.trials,
            "seed": args.seed,
            "tie_break": args.tie_break,
            "per_component": args.per_component == "on",
            "brute_force": bool(args.brute_force),
            "field_modulus": PRIME,
        },
        "hypergraph": _graph_summary(g),
        "result": result,
    }
    if args.out:
        Path(args.out).write_text(_render_json(report))
        report["out"] = args.out
    return report


def _cmd_ingest(args: argparse.Namespace) -> dict[str, Any]:
    series = read_timeseries_csv(Path(args.csv).read_text())
    table = multicorrelation_table(series)
    g = hypergraph_from_timeseries(series, args.threshold)
    bins = [0] * 10
    for t in table:
        bins[min(int(t.rho * 10), 9)] += 1
    report = {
        "command": "ingest",
        "version": __version__,
        "input": _file_input(args.csv),
        "parameters": {"threshold": args.threshold},
        "signals": list(series.labels),
        "result": {
            "triples_evaluated": len(table),
            "num_edges": g.num_edges,
            "rho_histogram": {
                "bin_width": 0.1,
                "counts": bins,
            },
            "hypergraph": g.to_dict(),
        },
    }
    if args.out:
        Path(args.out).write_text(g.to_json())
        report["out"] = args.out
    return report


def _render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _render_text(report: dict[str, Any]) -> str:
    lines = [f"command: {report['command']}"]
    if "hypergraph" in report:
        h = report["hypergraph"]
        lines.append(
            f"hypergraph: n={h['n']} k={h['k']} edges={h['num_edges']}"
        )
    result = report.get("result", {})
    if report["command"] == "gen":
        lines.append(f"edges: {result['edges']}")
    elif report["command"] == "observable":
        lines.append(
            f"rank {result['rank']} of {result['n']}: {result['verdict']}"
        )
    elif report["command"] == "mon":
        picks = " ".join(str(s) for s in result["selected"]) or "(none)"
        lines.append(f"selected: {picks}")
        lines.append(
            "rank trace: "
            + (" ".join(str(r) for r in result["rank_trace"]) or "(empty)")
        )
        lines.append(f"verdict: {result['verdict']}")
        if "brute_force" in result:
            bf = result["brute_force"]
            lines.append(
                f"brute force size {bf['size']}, "
                f"greedy matches: {bf['matches_greedy_size']}"
            )
    elif report["command"] == "ingest":
        lines.append(
            f"triples evaluated: {result['triples_evaluated']}, "
            f"edges kept: {result['num_edges']}"
        )
    if "out" in report:
        lines.append(f"written: {report['out']}")
    return "\n".join(lines) + "\n"


def _add_rank_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--depth", type=int, default=None, help="highest derivative level stacked")
    p.add_argument("--trials", type=int, default=3, help="random evaluation points per rank check")
    p.add_argument("--seed", type=int, default=0, help="master seed for all randomness")


def _add_format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format", choices=("json", "text"), default="json",
        help="report rendering",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperobs",
        description="Observability analysis of uniform hypergraph dynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a named topology")
    p_gen.add_argument("family", choices=sorted(GENERATORS))
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("k", type=int)
    p_gen.add_argument("--out", help="write the hypergraph JSON here")
    _add_format_flag(p_gen)
    p_gen.set_defaults(handler=_cmd_gen)

    p_obs = sub.add_parser(
        "observable", help="check local weak observability of a node set"
    )
    p_obs.add_argument("hypergraph", help="hypergraph JSON file")
    p_obs.add_argument(
        "--nodes", required=True,
        help="comma-separated node labels, or 'all'",
    )
    _add_rank_flags(p_obs)
    p_obs.add_argument("--out", help="also write the report here")
    _add_format_flag(p_obs)
    p_obs.set_defaults(handler=_cmd_observable)

    p_mon = sub.add_parser(
        "mon", help="select a minimum observable node set"
    )
    p_mon.add_argument("hypergraph", help="hypergraph JSON file")
    _add_rank_flags(p_mon)
    p_mon.add_argument(
        "--tie-break", choices=("degree", "index", "random"),
        default="degree", dest="tie_break",
    )
    p_mon.add_argument(
        "--per-component", choices=("on", "off"), default="on",
        dest="per_component",
        help="solve connected components independently",
    )
    p_mon.add_argument(
        "--brute-force", action="store_true", dest="brute_force",
        help="also run the exhaustive search and compare",
    )
    p_mon.add_argument("--out", help="also write the report here")
    _add_format_flag(p_mon)
    p_mon.set_defaults(handler=_cmd_mon)

    p_ing = sub.add_parser(
        "ingest", help="build a hypergraph from a time-series CSV"
    )
    p_ing.add_argument("csv", help="CSV with a label row then numeric rows")
    p_ing.add_argument(
        "--threshold", type=float, default=0.95,
        help="keep triples with correlation strictly above this",
    )
    p_ing.add_argument("--out", help="write the hypergraph JSON here")
    _add_format_flag(p_ing)
    p_ing.set_defaults(handler=_cmd_ingest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    started = time.perf_counter()
    try:
        report = args.handler(args)
    except ResourceLimitError as exc:
        print(f"hyperobs: resource limit: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError, KeyError, OSError) as exc:
        print(f"hyperobs: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover
        print(
            f"hyperobs: internal error: {type(exc).__name__}: {exc}",
            file=sys.stderr,
        )
        return 3
    if args.format == "text":
        sys.stdout.write(_render_text(report))
    else:
        sys.stdout.write(_render_json(report))
    print(
        f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
