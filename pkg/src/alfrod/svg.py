"""Deterministic SVG 1.1 rendering of a moment polytope.

The finite edges are drawn as a solid polyline, the edge at infinity as a
dashed segment, and each edge is labelled with its cone angle 2*pi*alpha_i.
All coordinates are written with 9 significant digits, so identical input
produces byte-identical output.
"""

from typing import Optional

import numpy as np

from .polytope import PolytopeData

_SIZE = 480.0
_MARGIN = 50.0


def _fmt(x: float) -> str:
    s = format(float(x), ".9g")
    return "0" if s in ("-0", "-0.0") else s


def render_polytope_svg(data: PolytopeData) -> str:
    """Render to an SVG string; uses lattice vertices when present."""
    verts = data.vertices_lattice if data.vertices_lattice is not None \
        else data.vertices_canonical
    verts = np.asarray(verts, dtype=float)
    lo = verts.min(axis=0)
    hi = verts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    scale = (_SIZE - 2.0 * _MARGIN) / span

    def to_px(p):
        # y grows upward mathematically, downward in SVG
        return (_MARGIN + (p[0] - lo[0]) * scale,
                _SIZE - _MARGIN - (p[1] - lo[1]) * scale)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" '
        f'viewBox="0 0 {_fmt(_SIZE)} {_fmt(_SIZE)}">',
        f'<rect width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" fill="white"/>',
    ]
    pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in map(to_px, verts))
    lines.append(f'<polyline points="{pts}" fill="none" stroke="black" '
                 'stroke-width="2"/>')
    first, last = to_px(verts[0]), to_px(verts[-1])
    lines.append(f'<line x1="{_fmt(last[0])}" y1="{_fmt(last[1])}" '
                 f'x2="{_fmt(first[0])}" y2="{_fmt(first[1])}" stroke="black" '
                 'stroke-width="2" stroke-dasharray="8,6"/>')
    n_edges = verts.shape[0] - 1  # finite edges; the dashed one closes the loop
    for e in range(n_edges):
        mid = (verts[e] + verts[e + 1]) / 2.0
        mx, my = to_px(mid)
        alpha = data.angles[e] if e < len(data.angles) else 1.0
        lines.append(f'<text x="{_fmt(mx + 6.0)}" y="{_fmt(my - 6.0)}" '
                     f'font-family="monospace" font-size="14">'
                     f'2&#960;&#183;{_fmt(alpha)}</text>')
    for px, py in map(to_px, verts):
        lines.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="3.5" '
                     'fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_polytope_svg(data: PolytopeData, path: str) -> Optional[str]:
    """Write the rendered SVG to path (or return it when path is None)."""
    text = render_polytope_svg(data)
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return None
