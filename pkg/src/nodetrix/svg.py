"""SVG rendering of instances and drawings.

Purely a visual skin: crossings are computed on the straight segments, and
the optional quadratic splines share the segments' endpoints, so toggling
them never changes any reported number.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .geometry import crossing_points
from .model import Drawing, FlatClusteredGraph, LayoutConfig

_MARGIN = 2.0


def render_svg(
    g: FlatClusteredGraph,
    cfg: LayoutConfig,
    drawing: Drawing | None = None,
    splines: bool = False,
) -> str:
    """SVG 1.1 document: squares, matrix cells, edges, crossing markers.

    World y grows upward, SVG y downward; the scene is flipped around its
    own bounding box. Matrix cells are filled from the intra-cluster edges
    (diagonal cells lightly, since a vertex always occupies its own cell).
    """
    squares = cfg.squares
    if squares:
        min_x = min(float(s.min_x) for s in squares.values()) - _MARGIN
        max_x = max(float(s.max_x) for s in squares.values()) + _MARGIN
        min_y = min(float(s.min_y) for s in squares.values()) - _MARGIN
        max_y = max(float(s.max_y) for s in squares.values()) + _MARGIN
    else:
        min_x, max_x, min_y, max_y = 0.0, 1.0, 0.0, 1.0

    def sx(x) -> float:
        return round(float(x) - min_x, 4)

    def sy(y) -> float:
        return round(max_y - float(y), 4)

    width = round(max_x - min_x, 4)
    height = round(max_y - min_y, 4)
    parts: list[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
    ]

    intra = {frozenset(p) for p in g.intra_edges}
    for cid in sorted(squares):
        sq = squares[cid]
        order = cfg.orders[cid]
        n = len(order)
        cell = float(sq.size) / n
        parts.append(f'<g id="cluster-{escape(cid)}">')
        for row, rv in enumerate(order):
            for col, cv in enumerate(order):
                filled = frozenset((rv, cv)) in intra
                fill = "#4a7dbd" if filled else ("#dbe5f0" if rv == cv else "none")
                if fill == "none":
                    continue
                x = sx(float(sq.min_x) + col * cell)
                y = sy(float(sq.max_y) - row * cell)
                parts.append(
                    f'<rect x="{round(x, 4)}" y="{round(y, 4)}" width="{round(cell, 4)}" '
                    f'height="{round(cell, 4)}" fill="{fill}"/>'
                )
        parts.append(
            f'<rect x="{sx(sq.min_x)}" y="{sy(sq.max_y)}" width="{round(float(sq.size), 4)}" '
            f'height="{round(float(sq.size), 4)}" fill="none" stroke="#1d3a5f" stroke-width="0.12"/>'
        )
        parts.append(
            f'<text x="{sx(sq.min_x)}" y="{round(sy(sq.max_y) - 0.3, 4)}" '
            f'font-size="0.8">{escape(cid)}</text>'
        )
        parts.append("</g>")

    if drawing is not None:
        parts.append('<g id="edges">')
        for eid in sorted(drawing.edge_segments):
            (x1, y1), (x2, y2) = drawing.edge_segments[eid]
            if splines:
                # control point perpendicular to the chord; endpoints unchanged
                mx = (Fraction(x1) + Fraction(x2)) / 2
                my = (Fraction(y1) + Fraction(y2)) / 2
                dx, dy = float(x2 - x1), float(y2 - y1)
                norm = max((dx * dx + dy * dy) ** 0.5, 1e-9)
                cx = float(mx) - 0.2 * dy / norm * min(norm, 4.0)
                cy = float(my) + 0.2 * dx / norm * min(norm, 4.0)
                parts.append(
                    f'<path d="M {sx(x1)} {sy(y1)} Q {round(sx(cx), 4)} {round(sy(cy), 4)} '
                    f'{sx(x2)} {sy(y2)}" fill="none" stroke="#b3541e" stroke-width="0.1" '
                    f'data-edge="{escape(eid)}"/>'
                )
            else:
                parts.append(
                    f'<line x1="{sx(x1)}" y1="{sy(y1)}" x2="{sx(x2)}" y2="{sy(y2)}" '
                    f'stroke="#b3541e" stroke-width="0.1" data-edge="{escape(eid)}"/>'
                )
        parts.append("</g>")

        solved = LayoutConfig(cfg.squares, cfg.orders, drawing.edge_sides)
        markers = crossing_points(g, solved)
        if markers:
            parts.append('<g id="crossings">')
            for e1, e2, p in markers:
                parts.append(
                    f'<circle cx="{sx(p.x)}" cy="{sy(p.y)}" r="0.22" fill="none" '
                    f'stroke="#c4161c" stroke-width="0.08">'
                    f"<title>{escape(e1)} x {escape(e2)}</title></circle>"
                )
            parts.append("</g>")

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
