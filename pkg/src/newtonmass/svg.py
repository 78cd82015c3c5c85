"""SVG 1.1 rendering of a planar Newton polygon over its lattice grid."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Tuple

from .hull import RatPolytope

SIZE = 400
MARGIN = 40


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def render_polygon(P: RatPolytope, title: str = "Newton polygon") -> str:
    if P.n != 2:
        raise ValueError("SVG rendering is only available for n = 2")
    verts: List[Tuple[Fraction, Fraction]] = P.polygon() if not P.is_degenerate() else list(P.vertices)
    top = max(1, max(math.ceil(c) for v in verts for c in v))
    scale = (SIZE - 2 * MARGIN) / top

    def to_px(p):
        return MARGIN + float(p[0]) * scale, SIZE - MARGIN - float(p[1]) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        '<g id="grid" stroke="#cccccc" stroke-width="1">',
    ]
    for k in range(top + 1):
        x0, y0 = to_px((k, 0))
        x1, y1 = to_px((k, top))
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>')
        x0, y0 = to_px((0, k))
        x1, y1 = to_px((top, k))
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>')
    out.append("</g>")
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(to_px, verts))
    if P.is_degenerate():
        out.append(f'<polyline id="newton" points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="2"/>')
    else:
        out.append(f'<polygon id="newton" points="{pts}" fill="#9ab8e6" fill-opacity="0.6" '
                   'stroke="#1f4e9c" stroke-width="2"/>')
    out.append('<g id="vertices" fill="#1f4e9c">')
    for v, (x, y) in zip(verts, map(to_px, verts)):
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"><title>({v[0]}, {v[1]})</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
