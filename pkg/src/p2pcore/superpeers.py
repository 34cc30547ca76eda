"""Super-peer identification, coverage, neighbour overlap and removal robustness."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Collection, NamedTuple, Sequence

from .graph import Graph, connected_components, remove_nodes


class ProfileRow(NamedTuple):
    node: int
    k: int
    ksn: int
    in_core: bool


@dataclass(frozen=True)
class Coverage:
    coverage_nodes: int  # supers plus every direct neighbour, each counted once
    neighbor_nodes: int  # direct neighbours that are not supers themselves
    coverage_fraction: float


@dataclass(frozen=True)
class Overlap:
    """Pairwise neighbour overlap between supers, supers excluded from the sets.

    ``min_norm[a][b] = |N(a) & N(b)| / min(|N(a)|, |N(b)|)``; ``jaccard`` is
    the same intersection over the union. Diagonals are 1.
    """

    supers: tuple[int, ...]
    min_norm: tuple[tuple[float, ...], ...]
    jaccard: tuple[tuple[float, ...], ...]
    max_offdiag: tuple[float | None, ...]


@dataclass(frozen=True)
class SuperPeerReport:
    supers: tuple[int, ...]
    coverage: Coverage
    overlap: Overlap
    profile: tuple[ProfileRow, ...]


@dataclass(frozen=True)
class ComponentStats:
    node_count: int
    edge_count: int
    largest_component: int
    isolated_nodes: int
    component_count: int


@dataclass(frozen=True)
class RobustnessReport:
    removed: tuple[int, ...]
    before: ComponentStats
    after: ComponentStats


def top_degree_nodes(graph: Graph, n: int) -> list[int]:
    """The ``n`` highest-degree nodes, descending; ties go to the smaller id."""
    if not 1 <= n <= graph.node_count:
        raise ValueError(f"n must be in 1..{graph.node_count}, got {n}")
    adj = graph.adjacency
    return heapq.nsmallest(n, range(graph.node_count), key=lambda v: (-len(adj[v]), v))


def _check_supers(graph: Graph, supers: Sequence[int]) -> None:
    seen = set()
    for s in supers:
        if not 0 <= s < graph.node_count:
            raise ValueError(f"super {s} is not a valid node id")
        if s in seen:
            raise ValueError(f"super {s} listed more than once")
        seen.add(s)


def superpeer_coverage(graph: Graph, supers: Sequence[int]) -> Coverage:
    _check_supers(graph, supers)
    covered = set(supers)
    for s in supers:
        covered.update(graph.adjacency[s])
    n = graph.node_count
    return Coverage(
        coverage_nodes=len(covered),
        neighbor_nodes=len(covered) - len(supers),
        coverage_fraction=len(covered) / n if n else 0.0,
    )


def shared_neighbor_overlap(graph: Graph, supers: Sequence[int]) -> Overlap:
    _check_supers(graph, supers)
    for s in supers:
        if not graph.adjacency[s]:
            raise ValueError(f"super {s} has degree 0")
    super_set = set(supers)
    nbr = [set(graph.adjacency[s]) - super_set for s in supers]
    size = len(supers)
    min_norm = [[1.0] * size for _ in range(size)]
    jac = [[1.0] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            inter = len(nbr[a] & nbr[b])
            smaller = min(len(nbr[a]), len(nbr[b]))
            union = len(nbr[a]) + len(nbr[b]) - inter
            # a super whose neighbours are all supers shares nothing once those are excluded
            min_norm[a][b] = min_norm[b][a] = inter / smaller if smaller else 0.0
            jac[a][b] = jac[b][a] = inter / union if union else 0.0
    max_off = tuple(
        max((min_norm[a][b] for b in range(size) if b != a), default=None) for a in range(size)
    )
    return Overlap(
        tuple(supers),
        tuple(map(tuple, min_norm)),
        tuple(map(tuple, jac)),
        max_off,
    )


def superpeer_degree_profile(
    graph: Graph, supers: Sequence[int], core: Collection[int] = ()
) -> list[ProfileRow]:
    """Per node: degree, number of super neighbours, and core membership."""
    _check_supers(graph, supers)
    super_set = set(supers)
    core = set(core)
    return [
        ProfileRow(v, len(nbrs), sum(1 for w in nbrs if w in super_set), v in core)
        for v, nbrs in enumerate(graph.adjacency)
    ]


def superpeer_report(
    graph: Graph, supers: Sequence[int], core: Collection[int] = ()
) -> SuperPeerReport:
    return SuperPeerReport(
        tuple(supers),
        superpeer_coverage(graph, supers),
        shared_neighbor_overlap(graph, supers),
        tuple(superpeer_degree_profile(graph, supers, core)),
    )


def component_stats(graph: Graph) -> ComponentStats:
    parts = connected_components(graph)
    return ComponentStats(
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        largest_component=parts.largest,
        isolated_nodes=sum(1 for a in graph.adjacency if not a),
        component_count=parts.count,
    )


def removal_robustness(graph: Graph, drop: Sequence[int]) -> RobustnessReport:
    """Component statistics before and after deleting ``drop``."""
    if len(set(drop)) != len(drop):
        raise ValueError("drop list contains duplicates")
    remaining = remove_nodes(graph, drop).graph
    return RobustnessReport(tuple(drop), component_stats(graph), component_stats(remaining))
