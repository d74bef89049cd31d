"""Deterministic SVG output for factors and their products.

The viewBox is fixed from the hull bound of the product padded by 5%, so
the same inputs and flags always give the same bytes. y is flipped so the
imaginary axis points up.
"""
import logging
from pathlib import Path
from typing import Sequence

import numpy as np

from .geometry import ConvexBody, Disk, body_boundary, hull_bound
from .membership import RasterGrid

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg viewBox="%(x)s %(y)s %(width)s %(height)s" width="%(px)d" height="%(px)d" version="1.1" \
xmlns="http://www.w3.org/2000/svg">
<rect x="%(x)s" y="%(y)s" width="%(width)s" height="%(height)s" style="fill:#ffffff"/>
"""

POSTAMBLE = "</svg>\n"

FACTOR_COLORS = ("#1f77b4", "#2ca02c")
PRODUCT_COLOR = "#d62728"


def _num(v: float) -> str:
    return "%.9g" % (0.0 if v == 0 else v)


def _pt(z: complex) -> str:
    return "%s,%s" % (_num(z.real), _num(-z.imag))


class SVG:
    def __init__(self, bbox: tuple[float, float, float, float], pixels: int = 800):
        x0, x1, y0, y1 = bbox
        pad = 0.05 * max(x1 - x0, y1 - y0, 1e-12)
        self.view = (x0 - pad, -(y1 + pad), x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)
        self.stroke = 0.003 * max(self.view[2], self.view[3])
        self.pixels = pixels
        self.commands: list[str] = []

    @classmethod
    def for_product(cls, K1: ConvexBody, K2: ConvexBody, include_factors: bool = True) -> "SVG":
        """Canvas sized to the hull bound of ``K1 K2``, and to the factors when they are drawn."""
        pts = list(hull_bound(K1, K2).vertices)
        if include_factors:
            pts += [z for K in (K1, K2) for z in body_boundary(K, 64)]
        pts = np.asarray(pts)
        return cls((pts.real.min(), pts.real.max(), pts.imag.min(), pts.imag.max()))

    def polygon(self, points: Sequence[complex], color: str = "#000000", fill: str = "none"):
        self.commands.append(
            '<polygon points="%s" style="fill:%s;stroke:%s;stroke-width:%s"/>'
            % (" ".join(_pt(z) for z in points), fill, color, _num(self.stroke))
        )

    def line(self, points: Sequence[complex], color: str = "#000000"):
        self.commands.append(
            '<polyline points="%s" style="fill:none;stroke:%s;stroke-width:%s"/>'
            % (" ".join(_pt(z) for z in points), color, _num(self.stroke))
        )

    def dot(self, z: complex, color: str = "#000000"):
        self.commands.append(
            '<circle cx="%s" cy="%s" r="%s" style="fill:%s"/>'
            % (_num(z.real), _num(-z.imag), _num(2 * self.stroke), color)
        )

    def body(self, K: ConvexBody, color: str = "#000000"):
        pts = body_boundary(K, 256 if isinstance(K, Disk) else 4)
        if len(pts) == 1:
            self.dot(complex(pts[0]), color)
        else:
            self.polygon(pts, color)

    def raster(self, grid: RasterGrid, color: str = PRODUCT_COLOR):
        """One rect per run of occupied cells in a row."""
        x0, _, y0, _ = grid.bbox
        h = grid.cell
        for j, row in enumerate(grid.occupancy):
            padded = np.concatenate([[False], row, [False]]).astype(np.int8)
            edges = np.flatnonzero(np.diff(padded))
            for start, stop in zip(edges[::2], edges[1::2]):
                self.commands.append(
                    '<rect x="%s" y="%s" width="%s" height="%s" style="fill:%s;fill-opacity:0.5"/>'
                    % (_num(x0 + start * h), _num(-(y0 + (j + 1) * h)), _num((stop - start) * h), _num(h), color)
                )

    def render(self) -> str:
        x, y, width, height = (_num(v) for v in self.view)
        head = PREAMBLE % {"x": x, "y": y, "width": width, "height": height, "px": self.pixels}
        return head + "".join(item + "\n" for item in self.commands) + POSTAMBLE

    def save(self, filename) -> Path:
        path = Path(filename)
        path.write_text(self.render())
        logger.debug("wrote %s (%d elements)", path, len(self.commands))
        return path


def product_svg(
    K1: ConvexBody,
    K2: ConvexBody,
    outline: Sequence[complex] | None = None,
    grid: RasterGrid | None = None,
) -> SVG:
    """Factors outlined, the product as an exact outline or a raster fill."""
    svg = SVG.for_product(K1, K2)
    if grid is not None:
        svg.raster(grid)
    if outline is not None and len(outline) > 1:
        svg.polygon(outline, PRODUCT_COLOR)
    for K, color in zip((K1, K2), FACTOR_COLORS):
        svg.body(K, color)
    return svg
