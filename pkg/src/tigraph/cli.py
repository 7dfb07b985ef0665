"""Command-line frontend: report, oracle, higher, ingest, export-dot.

Exit codes: 0 success, 2 invalid input, 3 resource cap reached (partial
output is still printed when possible).  Output is byte-identical across
runs for a fixed input and configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bounds import BoundReport, best_bound, oracle_separated_count
from .config import Config
from .errors import (
    DegenerateCoverError,
    EmptyGraphError,
    ParseError,
    SizeCapExceeded,
    StateCapExceeded,
    TigraphError,
    ValidationError,
)
from .graph import TIGraph, export_dot, parse_tigraph, prune_stranded, serialize_tigraph
from .higher import higher_graph
from .ingest import load_map_spec, ti_from_circle
from .structure import is_primitive, primitivity_index

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3


def _read_graph(path: str) -> TIGraph:
    text = Path(path).read_text(encoding="utf-8")
    fmt = "json" if text.lstrip()[:1] == "{" else "text"
    return parse_tigraph(text, fmt=fmt)


def _config_from_args(args: argparse.Namespace) -> Config:
    return Config(
        m_max=args.m_max,
        tol=args.tol,
        mis_budget=args.mis_budget,
        size_cap=args.size_cap,
        state_cap=args.state_cap,
        output_format=args.format,
        seed=args.seed,
    )


def _format_report(report: BoundReport, removed: list[int], fmt: str) -> str:
    if fmt == "json":
        payload = report.to_json_dict()
        payload["pruned_vertices"] = removed
        return json.dumps(payload, separators=(",", ":")) + "\n"
    lines = [f"graph digest: {report.graph_digest}"]
    lines.append(
        "pruned vertices: " + (", ".join(map(str, removed)) if removed else "none")
    )
    lines.append(f"{'method':<22} {'ln':>14} {'log2':>14} {'status':<10} flags")
    for b in report.bounds:
        status = "CERTIFIED" if b.certified else "ESTIMATE"
        flags = []
        if b.exact:
            flags.append("EXACT")
        if "error" in b.certificate:
            flags.append("FAILED")
        if not b.certificate.get("applicable", True):
            flags.append("N/A")
        lines.append(
            f"{b.method:<22} {b.value:>14.9f} {b.value / math.log(2):>14.9f} "
            f"{status:<10} {' '.join(flags)}".rstrip()
        )
    best = report.best_bound()
    exact_note = " EXACT" if best.exact else ""
    lines.append(
        f"best: {best.method} = {best.value:.9f} (log2 {best.value / math.log(2):.9f})"
        f" {'CERTIFIED' if best.certified else 'ESTIMATE'}{exact_note}"
    )
    return "\n".join(lines) + "\n"


def _cap_hit(report: BoundReport) -> bool:
    for b in report.bounds:
        err = b.certificate.get("error", "")
        if err.startswith(("SizeCapExceeded", "StateCapExceeded")):
            return True
        if b.method == "higher_limit" and b.certificate.get("truncated"):
            return True
    return False


def cmd_report(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    g = _read_graph(args.path)
    pruned, index_map = prune_stranded(g)
    removed = sorted(set(range(1, g.n + 1)) - set(index_map))
    report = best_bound(pruned, cfg)
    sys.stdout.write(_format_report(report, removed, cfg.output_format))
    return EXIT_CAP if _cap_hit(report) else EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    g = _read_graph(args.path)
    pruned, _ = prune_stranded(g)
    sep = oracle_separated_count(
        pruned, args.n, size_cap=cfg.size_cap, mis_budget=cfg.mis_budget
    )
    if cfg.output_format == "json":
        payload = {"n": sep.n, "count": sep.count, "witness": [list(w) for w in sep.witness]}
        sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(f"n={sep.n} count={sep.count}\n")
        for w in sep.witness:
            sys.stdout.write("  " + " ".join(map(str, w)) + "\n")
    return EXIT_OK


def cmd_higher(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    g = _read_graph(args.path)
    pruned, _ = prune_stranded(g)
    lift = higher_graph(pruned, args.m, size_cap=cfg.size_cap)
    if args.stats:
        gamma = ""
        if is_primitive(pruned.t):
            base_gamma = primitivity_index(pruned.t)
            lifted_gamma = base_gamma if pruned.n == 1 else base_gamma - 1 + args.m
            gamma = f" gamma={lifted_gamma}"
        sys.stdout.write(
            f"m={args.m} vertices={lift.lifted.n} t_edges={lift.lifted.t.num_edges()}"
            f" i_edges={lift.lifted.i.num_edges()}{gamma}\n"
        )
        return EXIT_OK
    if args.dot:
        labels = {
            v: "(" + ",".join(map(str, lift.vertex_words[v - 1])) + ")"
            for v in range(1, lift.lifted.n + 1)
        }
        sys.stdout.write(export_dot(lift.lifted, node_labels=labels))
        return EXIT_OK
    payload = json.loads(serialize_tigraph(lift.lifted))
    payload["vertex_words"] = [list(w) for w in lift.vertex_words]
    sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    data = Path(args.path).read_text(encoding="utf-8")
    cmap, cover, margin = load_map_spec(data)
    g = ti_from_circle(cmap, cover, margin=margin)
    sys.stdout.write(serialize_tigraph(g) + "\n")
    return EXIT_OK


def cmd_export_dot(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    g = _read_graph(args.path)
    sys.stdout.write(export_dot(g))
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m-max", dest="m_max", type=int, default=4)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--mis-budget", dest="mis_budget", type=int, default=10_000_000)
    parser.add_argument("--size-cap", dest="size_cap", type=int, default=2_000_000)
    parser.add_argument("--state-cap", dest="state_cap", type=int, default=100_000)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tigraph",
        description="Entropy lower bounds for shift spaces with overlapping alphabets",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="prune, run all bound methods, print the report")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("oracle", help="brute-force maximum separated word family")
    p.add_argument("path")
    p.add_argument("-n", type=int, required=True, help="word length")
    _add_common(p)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("higher", help="dump the m-th higher vertex graph")
    p.add_argument("path")
    p.add_argument("-m", type=int, required=True, help="block length")
    p.add_argument("--stats", action="store_true", help="print counts instead of the graph")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    _add_common(p)
    p.set_defaults(fn=cmd_higher)

    p = sub.add_parser("ingest", help="build a TI-graph from a circle map and cover")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(fn=cmd_ingest)

    p = sub.add_parser("export-dot", help="render a TI-graph as Graphviz DOT")
    p.add_argument("path")
    _add_common(p)
    p.set_defaults(fn=cmd_export_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValidationError, DegenerateCoverError, EmptyGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SizeCapExceeded, StateCapExceeded) as exc:
        print(f"cap reached: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TigraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
