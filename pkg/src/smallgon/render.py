"""SVG figures: sides in one colour, diameter chords in another."""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import ParameterError
from .geometry import ConvexPolygon


@dataclass(frozen=True)
class RenderOptions:
    canvas_px: int = 600
    margin_frac: float = 0.08
    side_color: str = "blue"
    diameter_color: str = "black"
    show_labels: bool = False
    caption: str = ""

    def __post_init__(self):
        if not isinstance(self.canvas_px, int) or self.canvas_px < 100:
            raise ParameterError(f"canvas_px must be an integer >= 100, got {self.canvas_px!r}")
        if not 0.0 <= self.margin_frac <= 0.45:
            raise ParameterError(f"margin_frac must lie in [0, 0.45], got {self.margin_frac!r}")
        for c in (self.side_color, self.diameter_color):
            if not c or any(ch in c for ch in "<>\"'&"):
                raise ParameterError(f"invalid colour {c!r}")


def _f(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def render_svg(poly: ConvexPolygon, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    if len(poly) < 3:
        raise ParameterError("need a polygon with at least 3 vertices")
    size = opts.canvas_px
    caption_h = round(size * 0.08) if opts.caption else 0
    xs = [p.x for p in poly.vertices]
    ys = [p.y for p in poly.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = size * (1 - 2 * opts.margin_frac) / span
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2

    def to_px(p):
        # flip y so the picture keeps mathematical orientation
        return size / 2 + (p.x - cx) * scale, size / 2 - (p.y - cy) * scale

    pts = [to_px(p) for p in poly.vertices]
    side_w = size / 300
    diam_w = size / 500
    dot_r = size / 200
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size + caption_h}" '
        f'viewBox="0 0 {size} {size + caption_h}">',
        f'<rect x="0" y="0" width="{size}" height="{size + caption_h}" fill="white"/>',
        f'<g class="diameters" stroke="{opts.diameter_color}" stroke-width="{_f(diam_w)}">',
    ]
    for i, j in poly.diameter_pairs:
        (x1, y1), (x2, y2) = pts[i], pts[j]
        out.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
    out.append("</g>")
    out.append(f'<g class="sides" stroke="{opts.side_color}" stroke-width="{_f(side_w)}">')
    m = len(pts)
    for i in range(m):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % m]
        out.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
    out.append("</g>")
    out.append(f'<g class="vertices" fill="{opts.side_color}">')
    for x, y in pts:
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(dot_r)}"/>')
    out.append("</g>")
    if opts.show_labels:
        ids = poly.vertex_ids or tuple(range(m))
        font = max(size // 60, 6)
        out.append(f'<g class="labels" font-family="sans-serif" font-size="{font}" fill="{opts.diameter_color}">')
        for (x, y), vid in zip(pts, ids):
            # nudge labels outward from the canvas centre
            dx, dy = x - size / 2, y - size / 2
            norm = max((dx * dx + dy * dy) ** 0.5, 1e-9)
            lx = min(max(x + dx / norm * font, 0.0), size)
            ly = min(max(y + dy / norm * font, 0.0), size)
            out.append(f'<text x="{_f(lx)}" y="{_f(ly)}" text-anchor="middle">v{vid}</text>')
        out.append("</g>")
    if opts.caption:
        out.append(
            f'<text class="caption" x="{_f(size / 2)}" y="{_f(size + caption_h * 0.6)}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="{_f(caption_h * 0.4)}">'
            f"{escape(opts.caption)}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
