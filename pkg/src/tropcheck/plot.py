"""SVG rendering of planar cell decompositions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from tropcheck.pieces import Decomposition

COLORS = {1: "#9ecae1", -1: "#fdae6b", 0: "#d9d9d9", None: "#c7e9c0"}


def clip_polygon(poly: list[tuple[Fraction, Fraction]], a: Fraction, b: Fraction, c: Fraction):
    """Sutherland-Hodgman clip against the half-plane ``a*x + b*y + c >= 0``."""
    out = []
    if not poly:
        return out
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        vp = a * p[0] + b * p[1] + c
        vq = a * q[0] + b * q[1] + c
        if vp >= 0:
            out.append(p)
        if (vp > 0 > vq) or (vp < 0 < vq):
            t = vp / (vp - vq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def cell_polygons(d: Decomposition, viewport: Sequence[Fraction]):
    xmin, xmax, ymin, ymax = viewport
    box = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
    for p in d.pieces:
        poly = box
        for con in p.cell.constraints:
            (a, b), c = con.form.coeffs, con.form.constant
            poly = clip_polygon(poly, a, b, c)
        yield p, poly


def render_svg(d: Decomposition, viewport: Sequence[Fraction] = (-4, 4, -4, 4), size: int = 480) -> str:
    if d.map.n != 2:
        raise ValueError("plotting needs a map of the plane (n = 2)")
    xmin, xmax, ymin, ymax = (Fraction(v) for v in viewport)
    if xmin >= xmax or ymin >= ymax:
        raise ValueError("empty viewport")
    sx = size / (xmax - xmin)
    sy = size / (ymax - ymin)

    def px(pt):
        return float((pt[0] - xmin) * sx), float((ymax - pt[1]) * sy)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{d.map.name}: {d.N} pieces</title>",
    ]
    for p, poly in cell_polygons(d, (xmin, xmax, ymin, ymax)):
        if len(poly) < 3:
            continue
        sign = None if p.jac is None else (p.jac > 0) - (p.jac < 0)
        pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(px, poly))
        lines.append(
            f'<polygon points="{pts}" fill="{COLORS[sign]}" stroke="#333" stroke-width="1">'
            f"<title>piece {p.id}, jac {p.jac}</title></polygon>"
        )
        cx = sum(q[0] for q in poly) / len(poly)
        cy = sum(q[1] for q in poly) / len(poly)
        x, y = px((cx, cy))
        lines.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="12" text-anchor="middle">{p.id}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
