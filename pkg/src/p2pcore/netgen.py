"""Seeded generator of hub-dominated overlay topologies with planted super-peers.

Node ids ``0..s-1`` are the super-peers, wired to each other in a ring.
Every later (ordinary) node, in id order, opens ``d_out`` connections to
distinct earlier nodes: each draw targets a uniformly chosen super with
probability ``bias`` and otherwise a uniformly chosen earlier ordinary node.
A draw that hits an already chosen target is discarded and drawn again.
When no unchosen earlier ordinary node is left the draw goes to a super.

Optionally each ordinary node becomes a relay with probability
``relay_fraction``. A relay additionally opens ``relay_links`` connections to
distinct earlier relays (uniform, redrawn on repeats). Relays are what give
the graph a small dense core: without them every node has exactly ``d_out``
edges to earlier nodes, so the graph is ``d_out``-degenerate and its
innermost core is the whole graph. With ``relay_fraction = 0`` (the default)
no relay coin is tossed and the random stream is that of the plain model.

Randomness comes from numpy's PCG64 bit generator seeded with ``seed``.
Per ordinary node the draw order is: relay coin (only when
``relay_fraction > 0``), then for each draw a ``Generator.random`` coin and a
``Generator.integers`` pick, then the relay picks.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import spearmanr

from .correlation import knn_by_degree
from .graph import Graph
from .kcore import core_numbers
from .superpeers import (
    removal_robustness,
    shared_neighbor_overlap,
    superpeer_coverage,
    top_degree_nodes,
)


@dataclass(frozen=True)
class SyntheticConfig:
    n: int
    s: int = 14
    d_out: int = 8
    bias: float = 0.55
    seed: int = 0
    relay_fraction: float = 0.0
    relay_links: int = 0

    def __post_init__(self):
        if self.s < 1:
            raise ValueError("s must be at least 1")
        if self.n <= self.s:
            raise ValueError("n must exceed s")
        if not 1 <= self.d_out < self.n - 1:
            raise ValueError("d_out must satisfy 1 <= d_out < n - 1")
        if not 0.0 <= self.bias <= 1.0:
            raise ValueError("bias must be in [0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not 0.0 <= self.relay_fraction <= 1.0:
            raise ValueError("relay_fraction must be in [0, 1]")
        if self.relay_links < 0:
            raise ValueError("relay_links must be non-negative")


@dataclass(frozen=True)
class GeneratedNetwork:
    graph: Graph
    planted_supers: tuple[int, ...]
    config: SyntheticConfig
    relays: tuple[int, ...] = ()


def _ring_edges(s: int) -> list[tuple[int, int]]:
    if s == 2:
        return [(0, 1)]
    if s < 2:
        return []
    return [(i, (i + 1) % s) for i in range(s)]


def generate(config: SyntheticConfig) -> GeneratedNetwork:
    n, s, bias = config.n, config.s, config.bias
    rng = np.random.Generator(np.random.PCG64(config.seed))
    edges = _ring_edges(s)
    relays: list[int] = []

    for node in range(s, n):
        earlier = node - s  # ordinary nodes created before this one
        is_relay = config.relay_fraction > 0 and rng.random() < config.relay_fraction
        # bias == 1 never leaves the supers, so only they count as reachable
        reachable = s if bias >= 1.0 else s + earlier
        wanted = min(config.d_out, reachable)

        chosen: set[int] = set()
        ordinary_taken = 0
        while len(chosen) < wanted:
            if rng.random() < bias or ordinary_taken == earlier:
                target = int(rng.integers(s))
            else:
                target = s + int(rng.integers(earlier))
            if target in chosen:
                continue
            chosen.add(target)
            if target >= s:
                ordinary_taken += 1

        if is_relay:
            free = sum(1 for r in relays if r not in chosen)
            extra = min(config.relay_links, free)
            picked = 0
            while picked < extra:
                target = relays[int(rng.integers(len(relays)))]
                if target in chosen:
                    continue
                chosen.add(target)
                picked += 1
            relays.append(node)

        edges.extend((node, t) for t in sorted(chosen))

    graph = Graph.from_edges(n, edges)
    return GeneratedNetwork(graph, tuple(range(s)), config, tuple(relays))


@dataclass(frozen=True)
class NetworkMeasurement:
    """Flat record of the headline statistics of one generated network."""

    n: int
    edges: int
    assortativity: float | None
    coverage_fraction: float
    neighbor_nodes: int
    k_max: int
    k_max_core_size: int
    knn_rank_rho: float | None
    knn_rank_p: float | None
    band_fraction: float
    mean_ksn_ordinary: float
    supers_recovered: bool
    mean_max_overlap: float | None
    # removing the supers leaves more isolated nodes and a smaller LCC than
    # removing as many random ordinary nodes; None when too few ordinary nodes
    targeted_removal_worse: bool | None

    def as_dict(self) -> dict:
        return asdict(self)


def knn_decay(table, k_lo: int = 16, k_hi: int = 100) -> tuple[float | None, float | None]:
    """Spearman rank correlation of K_nn(k) against k over ``k_lo <= k <= k_hi``."""
    pts = [(r.k, r.knn) for r in table.rows if k_lo <= r.k <= k_hi]
    if len(pts) < 3:
        return None, None
    ks, vals = zip(*pts)
    if len(set(vals)) < 2:
        return None, None
    res = spearmanr(ks, vals)
    rho, p = float(res.statistic), float(res.pvalue)
    if math.isnan(rho):
        return None, None
    return rho, p


def measure(network: GeneratedNetwork, band: tuple[int, int] | None = None) -> NetworkMeasurement:
    """Run the analysis modules on ``network`` with its planted supers."""
    graph = network.graph
    supers = list(network.planted_supers)
    cfg = network.config
    if band is None:
        band = (cfg.d_out, cfg.d_out + 4)

    table = knn_by_degree(graph)
    decomp = core_numbers(graph)
    cov = superpeer_coverage(graph, supers)
    rho, p = knn_decay(table)

    super_set = set(supers)
    deg = graph.degrees()
    ordinary = [v for v in range(graph.node_count) if v not in super_set]
    in_band = sum(1 for v in ordinary if band[0] <= deg[v] <= band[1])
    ksn = [sum(1 for w in graph.adjacency[v] if w in super_set) for v in ordinary]

    if all(deg[v] for v in supers):
        ov = shared_neighbor_overlap(graph, supers)
        maxes = [m for m in ov.max_offdiag if m is not None]
        mean_max = sum(maxes) / len(maxes) if maxes else None
    else:
        mean_max = None

    targeted_worse = None
    if len(ordinary) >= len(supers):
        # separate stream so the comparison never perturbs generation
        pick = np.random.default_rng([cfg.seed, 1]).choice(len(ordinary), len(supers), replace=False)
        targeted = removal_robustness(graph, supers).after
        control = removal_robustness(graph, [ordinary[i] for i in sorted(pick)]).after
        targeted_worse = (
            targeted.isolated_nodes > control.isolated_nodes
            and targeted.largest_component < control.largest_component
        )

    return NetworkMeasurement(
        n=graph.node_count,
        edges=graph.edge_count,
        assortativity=table.assortativity.value,
        coverage_fraction=cov.coverage_fraction,
        neighbor_nodes=cov.neighbor_nodes,
        k_max=decomp.k_max,
        k_max_core_size=decomp.shell_sizes.get(decomp.k_max, 0),
        knn_rank_rho=rho,
        knn_rank_p=p,
        band_fraction=in_band / len(ordinary),
        mean_ksn_ordinary=sum(ksn) / len(ksn),
        supers_recovered=set(top_degree_nodes(graph, len(supers))) == super_set,
        mean_max_overlap=mean_max,
        targeted_removal_worse=targeted_worse,
    )
