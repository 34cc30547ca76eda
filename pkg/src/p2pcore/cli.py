"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on data errors (unreadable
or malformed input, analysis preconditions not met). Diagnostics go to
stderr; data goes to ``--out`` or stdout. Relative ``--out`` paths are placed
under ``$P2PCORE_OUTPUT_DIR`` when that variable is set.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .calibrate import CALIBRATED, choose_bias, format_sweep, sweep
from .correlation import degree_ccdf, knn_by_degree
from .graph import Graph, ParseResult, largest_component, parse_edge_list, serialize_edge_list
from .kcore import core_numbers, core_periphery_split, k_core_subgraph
from .netgen import SyntheticConfig, generate
from .render import RenderSizeError, knn_plot, matrix_plot, matrix_spec, scatter_ksn_plot
from .report import (
    analysis_report,
    dumps,
    knn_block,
    knn_csv,
    profile_csv,
    robustness_block,
    superpeer_block,
)
from .superpeers import removal_robustness, superpeer_report, top_degree_nodes

OUTPUT_DIR_ENV = "P2PCORE_OUTPUT_DIR"


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _unit(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {value}")
    return value


def _add_input(p: argparse.ArgumentParser, lcc: bool = True) -> None:
    p.add_argument("--input", "-i", default="-", help="edge-list file, '-' for stdin (default: -)")
    p.add_argument("--out", "-o", help="output file (default: stdout)")
    if lcc:
        p.add_argument(
            "--lcc", action="store_true", help="restrict the analysis to the largest connected component"
        )


def _add_threads(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--threads", type=_positive, default=1,
        help="parallelism ceiling for analysis passes (default: 1; passes currently run single-threaded)",
    )


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="p2pcore", description="Core-periphery analysis of P2P overlay graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="validate and normalise an edge list", formatter_class=fmt)
    _add_input(p)

    p = sub.add_parser("analyze", help="full JSON analysis report", formatter_class=fmt)
    _add_input(p)
    p.add_argument("--top-n", type=_positive, default=14, help="number of super-peers")
    p.add_argument("--k", type=_non_negative, default=None, help="core threshold (default: k_max)")
    _add_threads(p)

    p = sub.add_parser("kcore", help="core numbers as JSON", formatter_class=fmt)
    _add_input(p)
    p.add_argument("--k", type=_non_negative, default=None, help="core threshold for the member list (default: k_max)")
    p.add_argument("--members", action="store_true", help="include the labels of the core members")

    p = sub.add_parser("knn", help="K_nn(k) table and assortativity", formatter_class=fmt)
    _add_input(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="output format")
    _add_threads(p)

    p = sub.add_parser("superpeers", help="super-peer coverage, overlap and profile", formatter_class=fmt)
    _add_input(p)
    p.add_argument("--top-n", type=_positive, default=14, help="number of super-peers")
    p.add_argument("--k", type=_non_negative, default=None, help="core threshold for in_core (default: k_max)")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="json report or csv profile")
    _add_threads(p)

    p = sub.add_parser("robustness", help="component statistics after removing nodes", formatter_class=fmt)
    _add_input(p)
    p.add_argument("--top-n", type=_positive, default=14, help="remove the top-n degree nodes")
    p.add_argument("--drop", help="file listing node labels to remove instead, one per line")

    p = sub.add_parser("gen", help="generate a synthetic overlay graph", formatter_class=fmt)
    p.add_argument("--nodes", type=int, default=CALIBRATED.n, help="total node count")
    p.add_argument("--supers", type=int, default=CALIBRATED.s, help="planted super-peer count")
    p.add_argument("--dout", type=int, default=CALIBRATED.d_out, help="outgoing connections per ordinary node")
    p.add_argument("--bias", type=_unit, default=CALIBRATED.bias, help="probability that a connection targets a super")
    p.add_argument("--seed", type=_non_negative, default=0, help="random seed (64-bit)")
    p.add_argument("--relay-fraction", type=_unit, default=CALIBRATED.relay_fraction,
                   help="probability that an ordinary node is a relay")
    p.add_argument("--relay-links", type=_non_negative, default=CALIBRATED.relay_links,
                   help="extra connections each relay opens to earlier relays")
    p.add_argument("--out", "-o", help="edge-list output file (default: stdout)")
    p.add_argument("--truth", help="write planted super labels here, one per line")

    p = sub.add_parser("render", help="SVG figures", formatter_class=fmt)
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    m = kinds.add_parser("matrix", help="degree-ordered adjacency matrix", formatter_class=fmt)
    _add_input(m)
    m.add_argument("--k", type=_non_negative, default=None, help="core threshold (default: k_max)")
    m.add_argument("--core", action="store_true", help="render only the k-core subgraph")
    m.add_argument("--cell-px", type=_positive, default=4, help="cell size in pixels")
    m.add_argument("--max-nodes", type=_positive, default=1000, help="refuse larger graphs")
    kp = kinds.add_parser("knn", help="K_nn(k) log-log scatter", formatter_class=fmt)
    _add_input(kp)
    s = kinds.add_parser("scatter", help="degree vs super-neighbour scatter", formatter_class=fmt)
    _add_input(s)
    s.add_argument("--top-n", type=_positive, default=14, help="number of super-peers")
    s.add_argument("--k", type=_non_negative, default=None, help="core threshold (default: k_max)")
    s.add_argument("--ref-x", type=float, default=8, help="x position of the reference line")

    p = sub.add_parser("calibrate", help="bias sweep for the generator", formatter_class=fmt)
    p.add_argument("--biases", type=float, nargs="+",
                   default=[0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65], help="bias values to try")
    p.add_argument("--seeds", type=_positive, default=10, help="seeds per bias value")
    p.add_argument("--out", "-o", help="output file (default: stdout)")
    return parser


# ---------------------------------------------------------------- I/O helpers


def _load(args, apply_lcc: bool = True) -> Graph:
    source = args.input
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {source}: {exc}") from exc
    try:
        parsed: ParseResult = parse_edge_list(text)
    except ValueError as exc:
        raise DataError(f"{source}: {exc}") from exc
    if parsed.duplicate_edges or parsed.self_loops:
        print(
            f"warning: dropped {parsed.duplicate_edges} duplicate edge(s) and "
            f"{parsed.self_loops} self-loop(s)",
            file=sys.stderr,
        )
    graph = parsed.graph
    if apply_lcc and getattr(args, "lcc", False):
        graph = largest_component(graph).graph
    return graph


def _output_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    target = _output_path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write {target}: {exc}") from exc


def _supers(graph: Graph, top_n: int) -> list[int]:
    if top_n > graph.node_count:
        raise DataError(f"--top-n {top_n} exceeds the node count {graph.node_count}")
    return top_degree_nodes(graph, top_n)


# ---------------------------------------------------------------- commands


def cmd_ingest(args) -> None:
    graph = _load(args)
    print(f"nodes {graph.node_count} edges {graph.edge_count}", file=sys.stderr)
    _emit(serialize_edge_list(graph), args.out)


def cmd_analyze(args) -> None:
    graph = _load(args, apply_lcc=False)
    report = analysis_report(graph, args.top_n, args.k, lcc=args.lcc, threads=args.threads)
    _emit(dumps(report), args.out)


def cmd_kcore(args) -> None:
    graph = _load(args)
    decomp = core_numbers(graph)
    doc = {
        "k_max": decomp.k_max,
        "shell_sizes": {str(k): v for k, v in decomp.shell_sizes.items()},
        "core_numbers": list(decomp.core_number),
    }
    if args.members or args.k is not None:
        split = core_periphery_split(graph, args.k, decomp)
        doc["k"] = split.k
        doc["core_members"] = [graph.label(v) for v in sorted(split.core)]
    _emit(dumps(doc), args.out)


def cmd_knn(args) -> None:
    graph = _load(args)
    table = knn_by_degree(graph)
    if args.format == "csv":
        _emit(knn_csv(table), args.out)
    else:
        doc = knn_block(table)
        doc["ccdf"] = [[k, f] for k, f in degree_ccdf(graph)]
        _emit(dumps(doc), args.out)


def cmd_superpeers(args) -> None:
    graph = _load(args)
    supers = _supers(graph, args.top_n)
    split = core_periphery_split(graph, args.k)
    rep = superpeer_report(graph, supers, split.core)
    if args.format == "csv":
        _emit(profile_csv(graph, rep.profile), args.out)
    else:
        _emit(dumps(superpeer_block(graph, rep)), args.out)


def cmd_robustness(args) -> None:
    graph = _load(args)
    if args.drop:
        try:
            wanted = Path(args.drop).read_text(encoding="utf-8").split()
        except OSError as exc:
            raise DataError(f"cannot read {args.drop}: {exc}") from exc
        index = {graph.label(v): v for v in range(graph.node_count)}
        missing = [w for w in wanted if w not in index]
        if missing:
            raise DataError(f"{args.drop}: unknown node label(s): {', '.join(missing[:5])}")
        drop = list(dict.fromkeys(index[w] for w in wanted))
    else:
        drop = _supers(graph, args.top_n)
    _emit(dumps(robustness_block(graph, removal_robustness(graph, drop))), args.out)


def cmd_gen(args) -> None:
    try:
        cfg = SyntheticConfig(
            n=args.nodes, s=args.supers, d_out=args.dout, bias=args.bias, seed=args.seed,
            relay_fraction=args.relay_fraction, relay_links=args.relay_links,
        )
    except ValueError as exc:
        raise UsageError(f"gen: {exc}") from exc
    net = generate(cfg)
    _emit(serialize_edge_list(net.graph), args.out)
    if args.truth:
        _emit("".join(f"{net.graph.label(v)}\n" for v in net.planted_supers), args.truth)
    print(
        f"generated {net.graph.node_count} nodes, {net.graph.edge_count} edges, "
        f"{len(net.relays)} relays",
        file=sys.stderr,
    )


def cmd_render(args) -> None:
    graph = _load(args)
    if args.kind == "matrix":
        decomp = core_numbers(graph)
        split = core_periphery_split(graph, args.k, decomp)
        if args.core:
            graph = k_core_subgraph(graph, split.k, decomp).graph
            core = range(graph.node_count)
        else:
            core = split.core
        spec = matrix_spec(graph, core, args.cell_px, args.max_nodes)
        try:
            svg = matrix_plot(graph, spec)
        except RenderSizeError as exc:
            raise DataError(str(exc)) from exc
    elif args.kind == "knn":
        table = knn_by_degree(graph)
        if not table.rows:
            raise DataError("graph has no edges; nothing to plot")
        svg = knn_plot(table)
    else:
        supers = _supers(graph, args.top_n)
        split = core_periphery_split(graph, args.k)
        rep = superpeer_report(graph, supers, split.core)
        svg = scatter_ksn_plot(rep.profile, args.ref_x, labels=graph.labels)
    _emit(svg, args.out)


def cmd_calibrate(args) -> None:
    points = sweep(args.biases, tuple(range(args.seeds)))
    min_seeds = -(-8 * args.seeds // 10)
    lines = [format_sweep(points)]
    try:
        lines.append(f"chosen bias: {choose_bias(points, min_seeds):.2f}")
    except ValueError as exc:
        lines.append(f"no bias chosen: {exc}")
    _emit("\n".join(lines) + "\n", args.out)


COMMANDS = {
    "ingest": cmd_ingest,
    "analyze": cmd_analyze,
    "kcore": cmd_kcore,
    "knn": cmd_knn,
    "superpeers": cmd_superpeers,
    "robustness": cmd_robustness,
    "gen": cmd_gen,
    "render": cmd_render,
    "calibrate": cmd_calibrate,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return 0


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream reader closed early (e.g. ``| head``); silence the final flush
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        code = 1
    sys.exit(code)
