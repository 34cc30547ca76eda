"""Degree correlations: nearest-neighbour degree, assortativity, degree CCDF.

Sums are accumulated as Python integers so results do not depend on
summation order; each reported real is a single final division.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class Assortativity:
    """Degree assortativity; ``value`` is None when undefined, with a reason."""

    value: float | None
    reason: str | None = None

    @property
    def defined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class KnnRow:
    k: int
    n_k: int
    knn: float
    # sum of neighbour degrees over all nodes of degree k, kept exact for audits
    neighbor_degree_sum: int


@dataclass(frozen=True)
class DegreeCorrelationTable:
    rows: tuple[KnnRow, ...]
    assortativity: Assortativity

    def knn_for(self, k: int) -> float | None:
        for row in self.rows:
            if row.k == k:
                return row.knn
        return None


def _neighbor_degree_sums(graph: Graph) -> tuple[list[int], list[int]]:
    deg = graph.degrees()
    sums = [sum(deg[j] for j in nbrs) for nbrs in graph.adjacency]
    return deg, sums


def knn_per_node(graph: Graph) -> list[float | None]:
    """Mean degree of each node's neighbours; None for isolated nodes."""
    deg, sums = _neighbor_degree_sums(graph)
    return [s / d if d else None for d, s in zip(deg, sums)]


def knn_by_degree(graph: Graph) -> DegreeCorrelationTable:
    """K_nn(k): average of per-node neighbour degree over nodes with degree k.

    Every node in class k divides by the same k, so the class mean equals
    ``(sum of neighbour degrees in the class) / (k * n_k)`` exactly.
    """
    deg, sums = _neighbor_degree_sums(graph)
    count: dict[int, int] = {}
    total: dict[int, int] = {}
    for d, s in zip(deg, sums):
        if d == 0:
            continue
        count[d] = count.get(d, 0) + 1
        total[d] = total.get(d, 0) + s
    rows = tuple(
        KnnRow(k, count[k], total[k] / (k * count[k]), total[k]) for k in sorted(count)
    )
    return DegreeCorrelationTable(rows, assortativity(graph))


def assortativity(graph: Graph) -> Assortativity:
    """Pearson correlation of endpoint degrees over both orientations of each edge.

    With both orientations counted, the two marginals coincide, so over
    ``M = 2|E|`` ordered pairs::

        sum x   = sum_i k_i^2
        sum x^2 = sum_i k_i^3
        sum xy  = 2 * sum_{(u,v) in E} k_u k_v

    and ``r = (M*sum xy - (sum x)^2) / (M*sum x^2 - (sum x)^2)``.
    """
    if graph.edge_count == 0:
        return Assortativity(None, "no edges")
    deg = graph.degrees()
    m = 2 * graph.edge_count
    sx = sum(d * d for d in deg)
    sxx = sum(d * d * d for d in deg)
    sxy = 2 * sum(deg[u] * deg[v] for u, v in graph.edges())
    denom = m * sxx - sx * sx
    if denom == 0:
        return Assortativity(None, "zero variance in endpoint degrees")
    return Assortativity((m * sxy - sx * sx) / denom)


def degree_ccdf(graph: Graph) -> list[tuple[int, float]]:
    """Fraction of nodes with degree >= k, for k = 0 .. max degree + 1."""
    n = graph.node_count
    if n == 0:
        return []
    deg = graph.degrees()
    max_deg = max(deg)
    hist = [0] * (max_deg + 2)
    for d in deg:
        hist[d] += 1
    out = []
    at_least = n
    for k in range(max_deg + 2):
        out.append((k, at_least / n))
        at_least -= hist[k]
    return out
