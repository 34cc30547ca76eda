"""Standalone SVG figures built from plain primitives.

Three figure types: the degree-ordered adjacency matrix with a dotted
core/periphery boundary, the K_nn(k) log-log scatter, and the degree versus
super-neighbour scatter. Styling lives in an embedded ``<style>`` block keyed
by class names, so colours can be swapped without touching geometry.
Coordinates are written with two decimals, which keeps output byte-stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Collection, Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .correlation import DegreeCorrelationTable
from .graph import Graph
from .superpeers import ProfileRow

# dark-to-light: low-degree cells are darkest
DEGREE_RAMP = ("#1a0000", "#6b0a00", "#b8320a", "#f07c1e", "#fcd27a")

DEFAULT_STYLE = {
    "frame": "fill:#ffffff;stroke:#444444;stroke-width:1",
    "boundary": "stroke:#1f3b8c;stroke-width:1.5;stroke-dasharray:2,3;fill:none",
    "axis": "stroke:#444444;stroke-width:1;fill:none",
    "tick": "font-family:sans-serif;font-size:10px;fill:#333333",
    "label": "font-family:sans-serif;font-size:12px;fill:#111111",
    "point": "fill:#c0392b;fill-opacity:0.8;stroke:none",
    "core": "fill:#2e9e44;fill-opacity:0.7;stroke:none",
    "periphery": "fill:#2c6fbb;fill-opacity:0.5;stroke:none",
    "reference": "stroke:#c0392b;stroke-width:1.2;stroke-dasharray:6,4;fill:none",
    "assortativity": "font-family:sans-serif;font-size:12px;fill:#111111",
    **{f"d{i}": f"fill:{c}" for i, c in enumerate(DEGREE_RAMP)},
}

MARGIN = 50


class RenderSizeError(ValueError):
    pass


def _f(x: float) -> str:
    return f"{x:.2f}"


def _svg(width: float, height: float, body: Iterable[str], style: Mapping[str, str]) -> str:
    css = "\n".join(f".{name} {{ {rule} }}" for name, rule in style.items())
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">\n'
        f'<style type="text/css"><![CDATA[\n{css}\n]]></style>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _text(x: float, y: float, s: str, cls: str = "tick", anchor: str = "middle", extra: str = "") -> str:
    return (
        f'<text class="{cls}" x="{_f(x)}" y="{_f(y)}" text-anchor="{anchor}"{extra}>'
        f"{escape(s)}</text>"
    )


def _line(x1: float, y1: float, x2: float, y2: float, cls: str) -> str:
    return f'<line class="{cls}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>'


def _tick_step(n: int, max_ticks: int = 10) -> int:
    step = 1
    while n / step > max_ticks:
        for mult in (2, 5, 10):
            if n / (step * mult) <= max_ticks:
                return step * mult
        step *= 10
    return step


# ---------------------------------------------------------------- matrix plot


@dataclass(frozen=True)
class MatrixPlotSpec:
    order: tuple[int, ...]  # node ids in display order
    boundary_index: int
    cell_px: int = 4
    max_renderable_n: int = 1000

    def validate(self, node_count: int) -> None:
        if sorted(self.order) != list(range(node_count)):
            raise ValueError("order must be a permutation of the node ids")
        if not 0 <= self.boundary_index <= node_count:
            raise ValueError("boundary_index out of range")
        if self.cell_px < 1:
            raise ValueError("cell_px must be positive")


def matrix_spec(
    graph: Graph, core: Collection[int] = (), cell_px: int = 4, max_renderable_n: int = 1000
) -> MatrixPlotSpec:
    """Core nodes first, then the periphery, each by descending degree (ties by id)."""
    core = set(core)
    deg = graph.degrees()
    order = sorted(range(graph.node_count), key=lambda v: (v not in core, -deg[v], v))
    return MatrixPlotSpec(tuple(order), len(core), cell_px, max_renderable_n)


def _ramp_classes(degrees: Sequence[int]) -> list[str]:
    """Map each node to one of the ramp classes by degree rank."""
    n = len(degrees)
    ranked = sorted(range(n), key=lambda v: (degrees[v], v))
    levels = len(DEGREE_RAMP)
    out = [""] * n
    for pos, v in enumerate(ranked):
        out[v] = f"d{pos * levels // n}"
    return out


def matrix_plot(
    graph: Graph, spec: MatrixPlotSpec, style: Mapping[str, str] = DEFAULT_STYLE
) -> str:
    n = graph.node_count
    if n > spec.max_renderable_n:
        raise RenderSizeError(
            f"graph has {n} nodes, above the {spec.max_renderable_n}-node limit; "
            "render the k-core subgraph instead (e.g. --core)"
        )
    spec.validate(n)
    c = spec.cell_px
    side = n * c
    width = height = side + 2 * MARGIN
    rank = {v: i for i, v in enumerate(spec.order)}
    ramp = _ramp_classes(graph.degrees())
    deg = graph.degrees()

    body = [f'<rect class="frame" x="{_f(MARGIN)}" y="{_f(MARGIN)}" width="{_f(side)}" height="{_f(side)}"/>']
    cells = []
    for u in range(n):
        for v in graph.adjacency[u]:
            weaker = u if (deg[u], u) < (deg[v], v) else v
            cells.append((rank[u], rank[v], ramp[weaker]))
    cells.sort()
    for i, j, cls in cells:
        body.append(
            f'<rect class="edge {cls}" x="{_f(MARGIN + j * c)}" y="{_f(MARGIN + i * c)}" '
            f'width="{_f(c)}" height="{_f(c)}"/>'
        )

    b = MARGIN + spec.boundary_index * c
    body.append(_line(b, MARGIN, b, MARGIN + side, "boundary"))
    body.append(_line(MARGIN, b, MARGIN + side, b, "boundary"))

    step = _tick_step(n)
    for t in range(0, n, step):
        pos = MARGIN + (t + 0.5) * c
        body.append(_text(pos, MARGIN - 6, str(t)))
        body.append(_text(MARGIN - 6, pos + 3, str(t), anchor="end"))
    body.append(_text(MARGIN + side / 2, height - 15, "node rank (by degree)", cls="label"))
    return _svg(width, height, body, style)


# ---------------------------------------------------------------- scatter helpers


class _LogAxis:
    def __init__(self, lo: float, hi: float, start: float, length: float):
        self.lo = math.floor(math.log10(lo))
        self.hi = math.ceil(math.log10(hi))
        if self.hi == self.lo:
            self.hi += 1
        self.start, self.length = start, length

    def __call__(self, value: float) -> float:
        return self.start + (math.log10(value) - self.lo) / (self.hi - self.lo) * self.length

    def ticks(self) -> list[int]:
        return [10**e for e in range(self.lo, self.hi + 1)]


class _LinAxis:
    def __init__(self, lo: float, hi: float, start: float, length: float):
        self.lo, self.hi = lo, hi if hi > lo else lo + 1
        self.start, self.length = start, length

    def __call__(self, value: float) -> float:
        return self.start + (value - self.lo) / (self.hi - self.lo) * self.length

    def ticks(self) -> list[int]:
        step = _tick_step(int(self.hi - self.lo), 8)
        return list(range(int(self.lo), int(self.hi) + 1, step))


PLOT_W, PLOT_H = 480, 360


def _frame(xaxis, yaxis, xlabel: str, ylabel: str, y_flip) -> list[str]:
    x0, y0 = MARGIN, MARGIN + PLOT_H
    body = [
        _line(x0, y0, x0 + PLOT_W, y0, "axis"),
        _line(x0, MARGIN, x0, y0, "axis"),
    ]
    for t in xaxis.ticks():
        x = xaxis(t)
        body.append(_line(x, y0, x, y0 + 4, "axis"))
        body.append(_text(x, y0 + 16, str(t)))
    for t in yaxis.ticks():
        y = y_flip(t)
        body.append(_line(x0 - 4, y, x0, y, "axis"))
        body.append(_text(x0 - 7, y + 3, str(t), anchor="end"))
    body.append(_text(x0 + PLOT_W / 2, y0 + 36, xlabel, cls="label"))
    body.append(
        _text(14, MARGIN + PLOT_H / 2, ylabel, cls="label",
              extra=f' transform="rotate(-90 14 {_f(MARGIN + PLOT_H / 2)})"')
    )
    return body


def _circle(x: float, y: float, cls: str, title: str, r: float = 3.0) -> str:
    return (
        f'<circle class="{cls}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}">'
        f"<title>{escape(title)}</title></circle>"
    )


# ---------------------------------------------------------------- K_nn plot


def knn_plot(table: DegreeCorrelationTable, style: Mapping[str, str] = DEFAULT_STYLE) -> str:
    if not table.rows:
        raise ValueError("degree-correlation table is empty")
    ks = [r.k for r in table.rows]
    vals = [r.knn for r in table.rows]
    xaxis = _LogAxis(min(ks), max(ks), MARGIN, PLOT_W)
    yaxis = _LogAxis(min(vals), max(vals), 0, PLOT_H)

    def y(v: float) -> float:
        return MARGIN + PLOT_H - yaxis(v)

    body = _frame(xaxis, yaxis, "k", "K_nn(k)", y)
    for r in table.rows:
        body.append(_circle(xaxis(r.k), y(r.knn), "point", f"k={r.k} knn={r.knn:.9g} n_k={r.n_k}"))
    a = table.assortativity
    label = (
        f"assortativity = {a.value:.2f}" if a.defined else f"assortativity undefined ({a.reason})"
    )
    body.append(_text(MARGIN + PLOT_W - 4, MARGIN + 14, label, cls="assortativity", anchor="end"))
    return _svg(PLOT_W + 2 * MARGIN, PLOT_H + 2 * MARGIN, body, style)


# ---------------------------------------------------------------- degree vs super-neighbour plot


def scatter_ksn_plot(
    profile: Sequence[ProfileRow],
    reference_x: float = 8,
    labels: Sequence[str] | None = None,
    style: Mapping[str, str] = DEFAULT_STYLE,
) -> str:
    """Degree (log x) against super-neighbour count, core and periphery styled apart.

    Nodes of degree 0 have no place on a log axis and are left out.
    """
    if not profile:
        raise ValueError("profile is empty")
    rows = [r for r in profile if r.k >= 1]
    ks = [r.k for r in rows] + [reference_x]
    xaxis = _LogAxis(min(ks), max(ks), MARGIN, PLOT_W)
    yaxis = _LinAxis(0, max((r.ksn for r in rows), default=1), 0, PLOT_H)

    def y(v: float) -> float:
        return MARGIN + PLOT_H - yaxis(v)

    body = _frame(xaxis, yaxis, "k_i (log scale)", "k{SN}_i", y)
    # periphery first so core markers are drawn on top
    for r in sorted(rows, key=lambda r: (r.in_core, r.node)):
        name = labels[r.node] if labels is not None else str(r.node)
        cls = "core" if r.in_core else "periphery"
        body.append(_circle(xaxis(r.k), y(r.ksn), cls, f"{name}: k={r.k} ksn={r.ksn}", r=2.5))
    rx = xaxis(reference_x)
    body.append(_line(rx, MARGIN, rx, MARGIN + PLOT_H, "reference"))
    body.append(_text(rx + 4, MARGIN + 12, f"x = {reference_x:g}", anchor="start"))
    return _svg(PLOT_W + 2 * MARGIN, PLOT_H + 2 * MARGIN, body, style)
