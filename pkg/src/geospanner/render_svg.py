"""Deterministic SVG 1.1 rendering of instances and spanner graphs.

Output is hand-assembled text with a fixed number format, so the same
inputs always produce byte-identical markup (golden-file friendly).
Layers are separate ``<g>`` elements: region, holes, edges, vias, sites.
"""

from __future__ import annotations

from .io_formats import PolygonInstance
from .spanner_graph import SpannerGraph

_PALETTE = {
    "region_fill": "#f2ede3",
    "region_stroke": "#4a4a4a",
    "hole_fill": "#ffffff",
    "hole_stroke": "#4a4a4a",
    "edge_stroke": "#2b6cb0",
    "via_fill": "#c53030",
    "site_fill": "#1a202c",
}


def _num(x: float) -> str:
    s = f"{x:.8g}"
    return "0" if s == "-0" else s


def _ring_path(vertices) -> str:
    head = f"M {_num(vertices[0][0])} {_num(vertices[0][1])}"
    rest = " ".join(f"L {_num(p[0])} {_num(p[1])}" for p in vertices[1:])
    return f"{head} {rest} Z"


def render_svg(
    inst: PolygonInstance,
    graph: SpannerGraph | None = None,
    size: float = 640.0,
) -> str:
    """SVG document for an instance, optionally with spanner edges on top."""
    xlo, ylo, xhi, yhi = inst.domain.outer.bounding_box()
    span = max(xhi - xlo, yhi - ylo, 1e-12)
    pad = 0.04 * span
    width = (xhi - xlo) + 2 * pad
    height = (yhi - ylo) + 2 * pad
    # y flips so the geometry's +y points up on screen
    view = f"{_num(xlo - pad)} {_num(-(yhi + pad))} {_num(width)} {_num(height)}"
    stroke = span / 400.0
    site_r = span / 150.0
    via_r = span / 220.0

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{view}" width="{_num(size)}" '
        f'height="{_num(size * height / width)}">',
        '<g transform="scale(1 -1)">',
        f'<g id="region" fill="{_PALETTE["region_fill"]}" '
        f'stroke="{_PALETTE["region_stroke"]}" stroke-width="{_num(stroke)}">',
        f'<path d="{_ring_path(inst.domain.outer.vertices)}"/>',
        "</g>",
        f'<g id="holes" fill="{_PALETTE["hole_fill"]}" '
        f'stroke="{_PALETTE["hole_stroke"]}" stroke-width="{_num(stroke)}">',
    ]
    for hole in inst.domain.holes:
        lines.append(f'<path d="{_ring_path(hole.vertices)}"/>')
    lines.append("</g>")

    lines.append(
        f'<g id="edges" fill="none" stroke="{_PALETTE["edge_stroke"]}" '
        f'stroke-width="{_num(stroke)}" stroke-opacity="0.75">'
    )
    vias: list[tuple[float, float]] = []
    if graph is not None:
        for key in sorted(graph.edges):
            path = graph.edges[key]
            pts = " ".join(f"{_num(p[0])},{_num(p[1])}" for p in path.vertices)
            lines.append(f'<polyline points="{pts}"/>')
            vias.extend(graph.vias.get(key, ()))
    lines.append("</g>")

    lines.append(f'<g id="vias" fill="{_PALETTE["via_fill"]}">')
    for v in vias:
        lines.append(
            f'<rect x="{_num(v[0] - via_r)}" y="{_num(v[1] - via_r)}" '
            f'width="{_num(2 * via_r)}" height="{_num(2 * via_r)}"/>'
        )
    lines.append("</g>")

    lines.append(f'<g id="sites" fill="{_PALETTE["site_fill"]}">')
    for p in inst.sites:
        lines.append(
            f'<circle cx="{_num(p[0])}" cy="{_num(p[1])}" r="{_num(site_r)}"/>'
        )
    lines.append("</g>")
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


__all__ = ["render_svg"]
