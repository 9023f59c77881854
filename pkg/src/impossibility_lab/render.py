"""Static SVG and DOT output for 2-dimensional triangulations."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import InputError
from .sperner import Triangulation

# corner 0 on top, corner 1 bottom left, corner 2 bottom right
_CORNERS = ((0.0, math.sqrt(3) / 2), (-0.5, 0.0), (0.5, 0.0))
_COLORS = ("#d62728", "#2ca02c", "#1f77b4")


def _require_2d(t):
    if t.dim != 2:
        raise InputError("rendering is only available for 2-dimensional triangulations")


def planar(t: Triangulation, v: int) -> tuple[float, float]:
    w = t.point(v)
    return (sum(wi * c[0] for wi, c in zip(w, _CORNERS)), sum(wi * c[1] for wi, c in zip(w, _CORNERS)))


def to_svg(t: Triangulation, labels: Sequence[int] | None = None, highlight: Iterable[int] = (),
           size: int = 400, labels_base: int = 1) -> str:
    _require_2d(t)
    highlight = set(highlight)
    pad = 30

    def xy(v):
        x, y = planar(t, v)
        return (pad + (x + 0.5) * size, pad + (math.sqrt(3) / 2 - y) * size)

    height = int(size * math.sqrt(3) / 2 + 2 * pad)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + 2 * pad}" height="{height}">']
    for ci, cell in enumerate(t.cells):
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in map(xy, cell))
        fill = "#cccccc" if ci in highlight else "none"
        out.append(f'  <polygon points="{pts}" fill="{fill}" stroke="black" stroke-width="1"/>')
    for v in range(len(t.vertices)):
        x, y = xy(v)
        if labels is None:
            out.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>')
            continue
        out.append(f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="{_COLORS[labels[v] % 3]}"/>')
        out.append(f'  <text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">{labels[v] + labels_base}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def to_dot(t: Triangulation, labels: Sequence[int] | None = None, highlight: Iterable[int] = (),
           labels_base: int = 1) -> str:
    """Vertex/edge graph of the triangulation with pinned positions (use ``neato -n``)."""
    _require_2d(t)
    highlight = set(highlight)
    edges = set()
    for cell in t.cells:
        for i in range(3):
            for j in range(i + 1, 3):
                edges.add(tuple(sorted((cell[i], cell[j]))))
    bold = {tuple(sorted((c[i], c[j]))) for ci in highlight for c in [t.cells[ci]] for i in range(3) for j in range(i + 1, 3)}
    out = ["graph triangulation {", "  node [shape=circle, width=0.3, fixedsize=true];"]
    for v in range(len(t.vertices)):
        x, y = planar(t, v)
        text = "" if labels is None else str(labels[v] + labels_base)
        color = "" if labels is None else f', color="{_COLORS[labels[v] % 3]}"'
        out.append(f'  v{v} [label="{text}", pos="{x * 300:.1f},{y * 300:.1f}!"{color}];')
    for a, b in sorted(edges):
        style = " [penwidth=3]" if (a, b) in bold else ""
        out.append(f"  v{a} -- v{b}{style};")
    out.append("}")
    return "\n".join(out) + "\n"
