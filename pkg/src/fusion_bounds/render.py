"""SVG drawings of planar patches coloured by a vector over regions."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .config import SensorConfiguration, hex_center
from .errors import NoLayout

PALETTE = {
    Fraction(0): "#ffffff",
    Fraction(1, 2): "#ffd700",
    Fraction(1): "#1f4fd8",
    Fraction(1, 4): "#9a9a9a",
    Fraction(3, 4): "#000000",
    Fraction(1, 3): "#2e9e3e",
    Fraction(2, 3): "#d62020",
}
UNLISTED = "#f0e6ff"
SCALE = 30.0


def colour(value) -> str | None:
    """Palette colour for ``value``; None when it must be written as a label."""
    return PALETTE.get(Fraction(value))


def _polygons(C: SensorConfiguration):
    layout = C.layout
    if not layout or layout.get("kind") not in ("hex", "square"):
        raise NoLayout("configuration has no planar layout to draw")
    cells = layout["cells"]
    if len(cells) != C.region_count:
        raise NoLayout("layout does not describe every region")
    out = []
    for q, r in cells:
        if layout["kind"] == "hex":
            cx, cy = hex_center(q, r)
            pts = [(cx + math.cos(math.radians(60 * k + 30)), cy + math.sin(math.radians(60 * k + 30)))
                   for k in range(6)]
        else:
            cx, cy = q + 0.5, r + 0.5
            pts = [(q, r), (q + 1, r), (q + 1, r + 1), (q, r + 1)]
        out.append(((cx, cy), pts))
    return out


def render_svg(C: SensorConfiguration, values: Sequence) -> str:
    """One polygon per region, filled according to ``values``.

    Values outside the palette are drawn in a pale fill with the exact
    rational printed on top.
    """
    vals = [Fraction(v) for v in values]
    if len(vals) != C.region_count:
        raise ValueError(f"expected {C.region_count} values, got {len(vals)}")
    polys = _polygons(C)
    xs = [x for _, pts in polys for x, _ in pts]
    ys = [y for _, pts in polys for _, y in pts]
    x0, x1, y0, y1 = min(xs) - 0.2, max(xs) + 0.2, min(ys) - 0.2, max(ys) + 0.2

    def tx(x):
        return f"{(x - x0) * SCALE:.3f}"

    def ty(y):
        # flip so that y grows upwards as in the usual plane picture
        return f"{(y1 - y) * SCALE:.3f}"

    w, h = (x1 - x0) * SCALE, (y1 - y0) * SCALE
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3f}" height="{h:.3f}" '
             f'viewBox="0 0 {w:.3f} {h:.3f}">']
    for i, ((cx, cy), pts) in enumerate(polys):
        fill = colour(vals[i]) or UNLISTED
        path = " ".join(f"{tx(x)},{ty(y)}" for x, y in pts)
        lines.append(f'  <polygon id="region-{i + 1}" points="{path}" fill="{fill}" '
                     f'stroke="#333333" stroke-width="1" data-value="{vals[i]}"/>')
        if colour(vals[i]) is None:
            lines.append(f'  <text x="{tx(cx)}" y="{ty(cy)}" font-size="10" '
                         f'text-anchor="middle" dominant-baseline="middle">{vals[i]}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
