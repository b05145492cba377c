"""SVG emission for a solved layout.

Layout space is y-up; SVG is y-down, so vertices flip through
F(x, y) = (x - minx, maxy - y). A placement q = S * R(theta) * p + t becomes
the SVG chain translate(tx, ty) rotate(-theta_deg) scale(S) applied to
text-local coordinates, with ty = maxy - t_y; each text line keeps its own
baseline offset in local units. Output is deterministic byte-for-byte:
numbers are fixed to three decimals and elements follow document order.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .treemap import LayoutDocument

log = logging.getLogger(__name__)

# categorical palette, cycled in cluster-id order
PALETTE = [
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc949",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
    "#86bcb6",
    "#d37295",
]


class RenderError(Exception):
    pass


class MissingPlacement(RenderError):
    """A leaf cell has no solved placement to draw."""


@dataclass(frozen=True)
class RenderStyle:
    palette: tuple[str, ...] = tuple(PALETTE)
    cell_stroke: str = "#ffffff"
    cell_stroke_width: float = 1.5
    cluster_stroke_width: float = 3.0
    font_family: str = "Helvetica, Arial, sans-serif"
    background: str = "#ffffff"
    text_color: str = "contrast-auto"

    def __post_init__(self):
        if not self.palette:
            raise ValueError("palette must not be empty")
        if self.cell_stroke_width < 0:
            raise ValueError("stroke width must be >= 0")

    def fill_for(self, color_index: int) -> str:
        return self.palette[color_index % len(self.palette)]

    def text_fill_for(self, fill: str) -> str:
        if self.text_color != "contrast-auto":
            return self.text_color
        r, g, b = (int(fill[i : i + 2], 16) for i in (1, 3, 5))
        luminance = (0.2126 * r + 0.7152 * g + 0.0722 * b) / 255.0
        return "#000000" if luminance > 0.5 else "#ffffff"


def _fmt(value: float) -> str:
    out = f"{value:.3f}"
    return "0.000" if out == "-0.000" else out


def to_svg(doc: LayoutDocument, style: RenderStyle = RenderStyle()) -> bytes:
    """Serialize the document as SVG 1.1 (UTF-8 bytes)."""
    x0, y0, x1, y1 = doc.container.bounds
    width, height = x1 - x0, y1 - y0

    def point(x, y):
        return f"{_fmt(x - x0)},{_fmt(y1 - y)}"

    def points_attr(poly):
        return " ".join(point(x, y) for x, y in poly.vertices)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect width="{_fmt(width)}" height="{_fmt(height)}" '
        f'fill="{style.background}"/>',
    ]

    overflowed = 0
    for cluster in doc.cells:
        for leaf in cluster.children or [cluster]:
            if not leaf.is_leaf:
                continue
            if leaf.placement is None:
                raise MissingPlacement(f"leaf {leaf.word or leaf.word_index} unplaced")
            fill = style.fill_for(leaf.color_index)
            parts.append(
                f'<polygon points="{points_attr(leaf.polygon)}" fill="{fill}" '
                f'stroke="{style.cell_stroke}" '
                f'stroke-width="{_fmt(style.cell_stroke_width)}"/>'
            )

    for cluster in doc.cells:
        if not cluster.children:
            continue
        path = "M " + " L ".join(point(x, y) for x, y in cluster.polygon.vertices) + " Z"
        parts.append(
            f'<path d="{path}" fill="none" stroke="{style.cell_stroke}" '
            f'stroke-width="{_fmt(style.cluster_stroke_width)}"/>'
        )

    for cluster in doc.cells:
        for leaf in cluster.children or [cluster]:
            if not leaf.is_leaf:
                continue
            placement = leaf.placement
            if placement.overflow:
                overflowed += 1
            fill = style.fill_for(leaf.color_index)
            text_fill = style.text_fill_for(fill)
            deg = -math.degrees(placement.theta)
            transform = (
                f"translate({_fmt(placement.dx - x0)},{_fmt(y1 - placement.dy)}) "
                f"rotate({_fmt(deg)}) scale({_fmt(placement.scale)})"
            )
            overflow_attr = ' data-overflow="true"' if placement.overflow else ""
            for line, offset in zip(placement.lines, placement.line_offsets):
                parts.append(
                    f'<text x="0" y="{_fmt(-offset)}" transform="{transform}" '
                    f'font-family="{escape(style.font_family, {chr(34): "&quot;"})}" '
                    f'font-size="1" fill="{text_fill}"{overflow_attr}>'
                    f"{escape(line)}</text>"
                )

    parts.append("</svg>")
    if overflowed:
        log.warning("%d placement(s) clamped to minimum size overflow their cells",
                    overflowed)
    return ("\n".join(parts) + "\n").encode("utf-8")


def to_json(doc: LayoutDocument, indent: int | None = None) -> str:
    """Passthrough serialization of the layout document."""
    return doc.to_json(indent=indent)
