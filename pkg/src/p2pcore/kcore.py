"""k-core decomposition and the core/periphery split it induces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graph import Graph, Subgraph, induced_subgraph


@dataclass(frozen=True)
class CoreDecomposition:
    core_number: tuple[int, ...]
    k_max: int
    shell_sizes: dict[int, int]

    def k_core_nodes(self, k: int) -> list[int]:
        return [v for v, c in enumerate(self.core_number) if c >= k]


class CorePeripherySplit(NamedTuple):
    k: int
    core: frozenset[int]
    periphery: frozenset[int]


def core_numbers(graph: Graph) -> CoreDecomposition:
    """Exact core numbers by bucket-queue peeling, O(V + E).

    Vertices sit in an array sorted by current degree, with ``bin_start[d]``
    pointing at the first vertex of degree ``d``. Removing a vertex lowers each
    higher-degree neighbour by one, which is a constant-time swap to the front
    of its bucket. The initial bucket fill is stable, so equal-degree vertices
    start out in ascending id order.
    """
    adj = graph.adjacency
    n = len(adj)
    deg = [len(a) for a in adj]
    max_deg = max(deg, default=0)

    bin_start = [0] * (max_deg + 1)
    for d in deg:
        bin_start[d] += 1
    start = 0
    for d in range(max_deg + 1):
        count = bin_start[d]
        bin_start[d] = start
        start += count

    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        p = bin_start[deg[v]]
        pos[v] = p
        vert[p] = v
        bin_start[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bin_start[d] = bin_start[d - 1]
    bin_start[0] = 0

    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in adj[v]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = vert[pw]
                if u != w:
                    pos[u] = pw
                    vert[pu] = w
                    pos[w] = pu
                    vert[pw] = u
                bin_start[du] += 1
                deg[u] = du - 1

    shells: dict[int, int] = {}
    for c in deg:
        shells[c] = shells.get(c, 0) + 1
    return CoreDecomposition(tuple(deg), max(deg, default=0), dict(sorted(shells.items())))


def k_core_subgraph(
    graph: Graph, k: int, decomposition: CoreDecomposition | None = None
) -> Subgraph:
    """Induced subgraph on nodes with core number >= k (empty past k_max)."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if decomposition is None:
        decomposition = core_numbers(graph)
    return induced_subgraph(graph, decomposition.k_core_nodes(k))


def core_periphery_split(
    graph: Graph, k: int | None = None, decomposition: CoreDecomposition | None = None
) -> CorePeripherySplit:
    if decomposition is None:
        decomposition = core_numbers(graph)
    if k is None:
        k = decomposition.k_max
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    core = frozenset(decomposition.k_core_nodes(k))
    periphery = frozenset(range(graph.node_count)) - core
    return CorePeripherySplit(k, core, periphery)
