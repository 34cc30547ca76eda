"""Simple undirected graph over dense integer ids, plus edge-list I/O.

Node ids are ``0..n-1``. External identifiers from an edge list are kept in
``Graph.labels`` so reports can refer back to the original peer names.
"""
from __future__ import annotations

import hashlib
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple


class GraphParseError(ValueError):
    """A line of an edge list could not be parsed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class EmptyGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``adjacency[i]`` is the sorted tuple of neighbours of node ``i``.
    ``labels`` optionally maps dense ids to external string labels.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    edge_count: int = field(init=False, compare=False)

    def __post_init__(self):
        n = len(self.adjacency)
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must have one entry per node")
        total = 0
        for i, nbrs in enumerate(self.adjacency):
            prev = -1
            for j in nbrs:
                if j <= prev:
                    raise ValueError(f"adjacency of node {i} is not strictly increasing")
                if j == i:
                    raise ValueError(f"self-loop on node {i}")
                if not 0 <= j < n:
                    raise ValueError(f"neighbour {j} of node {i} out of range")
                prev = j
            total += len(nbrs)
        # symmetry: every (i, j) must have its mirror (j, i)
        for i, nbrs in enumerate(self.adjacency):
            for j in nbrs:
                if j > i and not _contains(self.adjacency[j], i):
                    raise ValueError(f"edge ({i}, {j}) is not symmetric")
        if total % 2:
            raise ValueError("degree sum is odd")
        object.__setattr__(self, "edge_count", total // 2)

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Iterable[str] | None = None,
    ) -> Graph:
        """Build a graph from ``(u, v)`` pairs; duplicates and self-loops are dropped."""
        nbrs: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise IndexError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return cls(
            tuple(tuple(sorted(s)) for s in nbrs),
            tuple(labels) if labels is not None else None,
        )

    @property
    def node_count(self) -> int:
        return len(self.adjacency)

    def degree(self, node: int) -> int:
        return degree(self, node)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def label(self, node: int) -> str:
        return self.labels[node] if self.labels is not None else str(node)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with ``u < v``, ordered by ``(u, v)``."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def label_edges(self) -> frozenset[tuple[str, str]]:
        """Edges keyed by label, each pair in lexicographic order."""
        out = set()
        for u, v in self.edges():
            a, b = self.label(u), self.label(v)
            out.add((a, b) if a <= b else (b, a))
        return frozenset(out)

    def same_structure(self, other: Graph) -> bool:
        """True when both graphs have the same labelled edge set and node labels."""
        mine = {self.label(i) for i in range(self.node_count)}
        theirs = {other.label(i) for i in range(other.node_count)}
        return mine == theirs and self.label_edges() == other.label_edges()


def _contains(sorted_seq: tuple[int, ...], x: int) -> bool:
    i = bisect_left(sorted_seq, x)
    return i < len(sorted_seq) and sorted_seq[i] == x


class ParseResult(NamedTuple):
    graph: Graph
    duplicate_edges: int
    self_loops: int


class Subgraph(NamedTuple):
    graph: Graph
    mapping: dict[int, int]  # old id -> new id


@dataclass(frozen=True)
class ComponentPartition:
    component_id: tuple[int, ...]
    component_sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.component_sizes)

    @property
    def largest(self) -> int:
        return self.component_sizes[0] if self.component_sizes else 0

    def members(self, component: int) -> list[int]:
        return [v for v, c in enumerate(self.component_id) if c == component]


def parse_edge_list(text: str) -> ParseResult:
    """Parse a whitespace-separated edge list.

    Each non-blank, non-``#`` line must hold exactly two node identifiers.
    Identifiers get dense ids in order of first appearance. Repeated edges
    (in either direction) and self-loops are dropped and counted.
    """
    ids: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    duplicates = loops = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(line_no, f"expected 2 tokens, got {len(tokens)}: {raw!r}")
        u = ids.setdefault(tokens[0], len(ids))
        v = ids.setdefault(tokens[1], len(ids))
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        edges.append(key)
    if not ids:
        raise EmptyGraphError("edge list contains no nodes")
    graph = Graph.from_edges(len(ids), edges, labels=list(ids))
    return ParseResult(graph, duplicates, loops)


def read_edge_list(path: str | Path) -> ParseResult:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def serialize_edge_list(graph: Graph) -> str:
    """Canonical text form: a ``#`` header with counts, then sorted ``u v`` lines.

    Isolated nodes cannot be expressed in this format and are dropped.
    """
    lines = []
    for u, v in graph.edges():
        a, b = graph.label(u), graph.label(v)
        if b < a:
            a, b = b, a
        lines.append(f"{a} {b}")
    lines.sort()
    header = f"# nodes: {graph.node_count} edges: {graph.edge_count}"
    return "\n".join([header, *lines]) + "\n"


def graph_digest(graph: Graph) -> str:
    return hashlib.sha256(serialize_edge_list(graph).encode("utf-8")).hexdigest()


def degree(graph: Graph, node: int) -> int:
    if not 0 <= node < graph.node_count:
        raise IndexError(f"node {node} out of range for {graph.node_count} nodes")
    return len(graph.adjacency[node])


def connected_components(graph: Graph) -> ComponentPartition:
    """Components by BFS, numbered by descending size (ties: smallest member first)."""
    n = graph.node_count
    raw = [-1] * n
    sizes: list[int] = []
    for start in range(n):
        if raw[start] != -1:
            continue
        cid = len(sizes)
        raw[start] = cid
        queue = deque([start])
        size = 0
        while queue:
            v = queue.popleft()
            size += 1
            for w in graph.adjacency[v]:
                if raw[w] == -1:
                    raw[w] = cid
                    queue.append(w)
        sizes.append(size)
    # raw ids already ascend by smallest member; a stable sort keeps that as tie-break
    order = sorted(range(len(sizes)), key=lambda c: -sizes[c])
    remap = {old: new for new, old in enumerate(order)}
    return ComponentPartition(
        tuple(remap[c] for c in raw),
        tuple(sizes[c] for c in order),
    )


def largest_component(graph: Graph) -> Subgraph:
    parts = connected_components(graph)
    return induced_subgraph(graph, parts.members(0) if parts.count else [])


def induced_subgraph(graph: Graph, keep: Iterable[int]) -> Subgraph:
    """Subgraph on ``keep``; new ids follow ascending old ids."""
    n = graph.node_count
    kept = sorted(set(keep))
    for v in kept:
        if not 0 <= v < n:
            raise IndexError(f"node {v} out of range for {n} nodes")
    mapping = {old: new for new, old in enumerate(kept)}
    adjacency = tuple(
        tuple(mapping[w] for w in graph.adjacency[old] if w in mapping) for old in kept
    )
    labels = tuple(graph.labels[old] for old in kept) if graph.labels is not None else None
    return Subgraph(Graph(adjacency, labels), mapping)


def remove_nodes(graph: Graph, drop: Iterable[int]) -> Subgraph:
    drop = set(drop)
    for v in drop:
        if not 0 <= v < graph.node_count:
            raise IndexError(f"node {v} out of range for {graph.node_count} nodes")
    return induced_subgraph(graph, (v for v in range(graph.node_count) if v not in drop))
