"""Machine-readable analysis reports (JSON and CSV)."""
from __future__ import annotations

import csv
import io
import json
from importlib import resources
from typing import Any, Iterable, Sequence

from . import __version__
from .correlation import Assortativity, DegreeCorrelationTable, knn_by_degree
from .graph import Graph, connected_components, graph_digest, largest_component
from .kcore import CoreDecomposition, core_numbers, core_periphery_split
from .superpeers import (
    ComponentStats,
    ProfileRow,
    RobustnessReport,
    SuperPeerReport,
    removal_robustness,
    superpeer_report,
    top_degree_nodes,
)

SCHEMA_ID = "p2pcore.analysis/1"
SIG_DIGITS = 9


def round_sig(x: float) -> float:
    """Round to 9 significant digits; ``repr`` then gives the shortest form."""
    return float(f"{x:.{SIG_DIGITS}g}")


def _normalize(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Byte-stable JSON: insertion key order, 9 significant digits, no NaN."""
    return json.dumps(_normalize(obj), indent=2, allow_nan=False, ensure_ascii=False) + "\n"


def load_schema() -> dict:
    text = resources.files("p2pcore").joinpath("report.schema.json").read_text("utf-8")
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if ``report`` breaks the schema."""
    import jsonschema

    jsonschema.validate(report, load_schema())


def assortativity_block(a: Assortativity) -> dict:
    block: dict[str, Any] = {"assortativity": a.value}
    if not a.defined:
        block["reason"] = a.reason
    return block


def knn_block(table: DegreeCorrelationTable) -> dict:
    return {
        **assortativity_block(table.assortativity),
        "rows": [{"k": r.k, "n_k": r.n_k, "knn": r.knn} for r in table.rows],
    }


def kcore_block(
    graph: Graph, decomp: CoreDecomposition, k: int | None = None, members: bool = True
) -> dict:
    split = core_periphery_split(graph, k, decomp)
    block: dict[str, Any] = {
        "k_max": decomp.k_max,
        "k": split.k,
        "core_size": len(split.core),
        "periphery_size": len(split.periphery),
        "shell_sizes": {str(c): size for c, size in decomp.shell_sizes.items()},
    }
    if members:
        block["core_members"] = [graph.label(v) for v in sorted(split.core)]
    return block


def _stats(s: ComponentStats) -> dict:
    return {
        "node_count": s.node_count,
        "edge_count": s.edge_count,
        "largest_component": s.largest_component,
        "isolated_nodes": s.isolated_nodes,
        "component_count": s.component_count,
    }


def robustness_block(graph: Graph, rep: RobustnessReport) -> dict:
    return {
        "removed": [graph.label(v) for v in rep.removed],
        "before": _stats(rep.before),
        "after": _stats(rep.after),
    }


def superpeer_block(graph: Graph, rep: SuperPeerReport) -> dict:
    cov, ov = rep.coverage, rep.overlap
    return {
        "supers": [graph.label(v) for v in rep.supers],
        "coverage_nodes": cov.coverage_nodes,
        "neighbor_nodes": cov.neighbor_nodes,
        "coverage_fraction": cov.coverage_fraction,
        "overlap": {
            "min_normalized": ov.min_norm,
            "jaccard": ov.jaccard,
            "max_offdiag": ov.max_offdiag,
        },
        "profile": {
            "node": [graph.label(r.node) for r in rep.profile],
            "k": [r.k for r in rep.profile],
            "ksn": [r.ksn for r in rep.profile],
            "in_core": [r.in_core for r in rep.profile],
        },
    }


def analysis_report(
    graph: Graph,
    top_n: int = 14,
    k: int | None = None,
    *,
    lcc: bool = False,
    threads: int = 1,
) -> dict:
    """Run every analysis on ``graph`` and gather the results in one document.

    With ``lcc`` the analyses run on the largest connected component; the
    input digest always refers to the graph as given.
    """
    digest = graph_digest(graph)
    if lcc:
        graph = largest_component(graph).graph
    if k is not None and k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    top_n = min(top_n, graph.node_count)

    decomp = core_numbers(graph)
    split = core_periphery_split(graph, k, decomp)
    table = knn_by_degree(graph)
    supers = top_degree_nodes(graph, top_n)
    sp = superpeer_report(graph, supers, split.core)
    rob = removal_robustness(graph, supers)
    parts = connected_components(graph)

    return {
        "schema": SCHEMA_ID,
        "provenance": {
            "tool": "p2pcore",
            "version": __version__,
            "input_sha256": digest,
            "parameters": {"top_n": top_n, "k": k, "lcc": lcc, "threads": threads},
        },
        "graph": {
            "node_count": graph.node_count,
            "edge_count": graph.edge_count,
            "component_count": parts.count,
            "largest_component": parts.largest,
        },
        "kcore": kcore_block(graph, decomp, k),
        "degree_correlation": knn_block(table),
        "superpeers": superpeer_block(graph, sp),
        "robustness": robustness_block(graph, rob),
    }


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(round_sig(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def knn_csv(table: DegreeCorrelationTable) -> str:
    return _csv(["k", "n_k", "knn_k"], ((r.k, r.n_k, r.knn) for r in table.rows))


def profile_csv(graph: Graph, profile: Iterable[ProfileRow]) -> str:
    return _csv(
        ["node", "k_i", "ksn_i", "in_core"],
        ((graph.label(r.node), r.k, r.ksn, int(r.in_core)) for r in profile),
    )
