"""Small graph builders and brute-force oracles shared by the test modules.

The oracles deliberately take the slow, obvious route so they stay
independent of the implementations they check.
"""
from __future__ import annotations

import random

import numpy as np

from p2pcore.graph import Graph


def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def star(leaves: int) -> Graph:
    """Hub 0 with ``leaves`` leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def k4_pendant() -> Graph:
    """K4 on 0..3 with node 4 hanging off node 0."""
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)] + [(0, 4)]
    return Graph.from_edges(5, edges)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_corpus(count: int, seed: int, n_max: int = 50) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, n_max)
        p = rng.uniform(0.05, 0.5)
        out.append(random_graph(n, p, rng))
    return out


def edge_set(graph: Graph) -> set[frozenset[int]]:
    return {frozenset((u, v)) for u, nbrs in enumerate(graph.adjacency) for v in nbrs}


# ---------------------------------------------------------------- oracles


def peel(graph: Graph, k: int) -> set[int]:
    """Nodes left after repeatedly deleting any node with fewer than k live neighbours."""
    alive = set(range(graph.node_count))
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if sum(1 for w in graph.adjacency[v] if w in alive) < k:
                alive.discard(v)
                changed = True
    return alive


def brute_core_numbers(graph: Graph) -> list[int]:
    core = [0] * graph.node_count
    k = 1
    while True:
        alive = peel(graph, k)
        if not alive:
            return core
        for v in alive:
            core[v] = k
        k += 1


def brute_components(graph: Graph) -> set[frozenset[int]]:
    """Components from the boolean transitive closure of the adjacency matrix."""
    n = graph.node_count
    reach = np.eye(n, dtype=bool)
    for u, nbrs in enumerate(graph.adjacency):
        for v in nbrs:
            reach[u, v] = True
    for k in range(n):
        reach |= reach[:, [k]] & reach[[k], :]
    return {frozenset(np.flatnonzero(reach[v]).tolist()) for v in range(n)}


def ordered_degree_pairs(graph: Graph) -> tuple[list[int], list[int]]:
    deg = [len(a) for a in graph.adjacency]
    xs, ys = [], []
    for u, nbrs in enumerate(graph.adjacency):
        for v in nbrs:
            xs.append(deg[u])
            ys.append(deg[v])
    return xs, ys


def brute_pearson(graph: Graph) -> float | None:
    xs, ys = ordered_degree_pairs(graph)
    if not xs:
        return None
    x = np.array(xs, dtype=float)
    y = np.array(ys, dtype=float)
    if x.std() == 0 or y.std() == 0:
        return None
    return float(np.corrcoef(x, y)[0, 1])


def directed_neighbor_degree_total(graph: Graph) -> int:
    """Sum of k_j over every ordered edge occurrence (i, j)."""
    deg = [len(a) for a in graph.adjacency]
    return sum(deg[j] for nbrs in graph.adjacency for j in nbrs)
