"""Products of two segments.

Segments off lines through 0 are put in canonical position
``omega * K(1 + i a1, 1 + i a2)``; the product of two such segments is
then decided by how the intervals [a1, a2] and [b1, b2] overlap.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import DEFAULT_EPS, DEFAULT_TOL
from .exceptions import DegenerateFrame, InvalidInput
from .frame import canonicalize_segment, collinear_with_origin
from .geometry import (
    BoundaryPiece,
    ConvexPolygon,
    LineSeg,
    ParaArc,
    Segment,
    chain_points,
    contains_points,
    convex_hull,
    polygon_chain,
)
from .reports import StarCenterSet

logger = logging.getLogger(__name__)


class SegmentCase(str, Enum):
    COLLINEAR = "collinear"
    ZERO_IN_SEGMENT = "zero-in-segment"
    RAY_SCALED = "ray-scaled"
    QUAD = "quad"
    OVERLAP = "overlap"
    NESTED = "nested"


@dataclass(frozen=True)
class SquarePiece:
    """``scale * K(1 + i c1, 1 + i c2)^2``, the region under the two tangents of the parabola."""

    scale: complex
    c1: float
    c2: float

    def contains_many(self, zs, tol: float = DEFAULT_TOL) -> np.ndarray:
        w = np.asarray(zs, dtype=complex) / self.scale
        x, y = w.real, w.imag
        t = tol / abs(self.scale)
        c1, c2 = self.c1, self.c2
        band = (y >= 2 * c1 - t) & (y <= 2 * c2 + t)
        above = x >= 1 - y * y / 4 - t * np.sqrt(1 + y * y / 4)
        below1 = x <= 1 - c1 * (y - c1) + t * np.hypot(1.0, c1)
        below2 = x <= 1 - c2 * (y - c2) + t * np.hypot(1.0, c2)
        return band & above & below1 & below2


@dataclass(frozen=True)
class SegProductRegion:
    """Product of two segments.

    The region is the union of the convex ``cover`` polygons and the
    optional ``square`` piece; ``boundary`` is its closed outline.
    """

    case: SegmentCase
    boundary: tuple[BoundaryPiece, ...]
    star_centers: StarCenterSet
    cover: tuple[ConvexPolygon, ...] = ()
    square: SquarePiece | None = None

    def contains_many(self, zs, tol: float = DEFAULT_TOL) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        hit = np.zeros(zs.shape, dtype=bool)
        for poly in self.cover:
            hit |= contains_points(poly, zs, tol)
        if self.square is not None:
            hit |= self.square.contains_many(zs, tol)
        return hit

    def contains(self, z, tol: float = DEFAULT_TOL) -> bool:
        return bool(self.contains_many(np.array([complex(z)]), tol)[0])

    def boundary_points(self, per_piece: int = 64) -> np.ndarray:
        return chain_points(self.boundary, per_piece)

    def parabolic_arcs(self) -> list[ParaArc]:
        return [piece for piece in self.boundary if isinstance(piece, ParaArc)]


def _line(a: complex, b: complex) -> LineSeg:
    return LineSeg.between(a, b)


def _convex_region(case: SegmentCase, points) -> SegProductRegion:
    hull = convex_hull(points)
    return SegProductRegion(case, tuple(polygon_chain(hull)), StarCenterSet.everything(), (hull,))


def _ray_parameters(s: Segment) -> tuple[complex, float, float]:
    """Write a segment on a line through 0 as {t u : t in [t_lo, t_hi]} with |u| = 1."""
    far = s.p if abs(s.p) >= abs(s.q) else s.q
    u = far / abs(far)
    t_p, t_q = (s.p / u).real, (s.q / u).real
    return u, min(t_p, t_q), max(t_p, t_q)


def _zero_in_segment(s1: Segment, s2: Segment, eps: float) -> SegProductRegion:
    u, t_lo, t_hi = _ray_parameters(s1)
    triangles, chain = [], []
    for t in (t_hi, t_lo):
        if abs(t) <= eps:
            continue
        b1, b2 = t * u * s2.p, t * u * s2.q
        triangles.append(convex_hull((0j, b1, b2)))
        chain += [_line(0j, b1), _line(b1, b2), _line(b2, 0j)]
    if len(triangles) < 2:
        centers = StarCenterSet.everything()
    else:
        centers = StarCenterSet.at(0j)
    return SegProductRegion(SegmentCase.ZERO_IN_SEGMENT, tuple(chain), centers, tuple(triangles))


def _interval_pairs(a: tuple[float, float], b: tuple[float, float]):
    """Split a product of overlapping intervals into convex pairs and the common square."""
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    common = (lo, hi)

    def pieces(iv):
        out = []
        if iv[0] < lo:
            out.append((iv[0], lo))
        if hi < iv[1]:
            out.append((hi, iv[1]))
        return out

    pairs = [(p, common) for p in pieces(a)] + [(common, q) for q in pieces(b)]
    pairs += [(p, q) for p in pieces(a) for q in pieces(b)]
    return pairs, common


def _quad(omega: complex, iv1, iv2) -> ConvexPolygon:
    return convex_hull(
        omega * complex(1, x) * complex(1, y) for x in iv1 for y in iv2
    )


def product_seg_seg(s1: Segment, s2: Segment, eps: float = DEFAULT_EPS) -> SegProductRegion:
    if s1.is_degenerate(eps) or s2.is_degenerate(eps):
        alpha, other = (s1.p, s2) if s1.is_degenerate(eps) else (s2.p, s1)
        case = SegmentCase.COLLINEAR if collinear_with_origin(other, eps) else SegmentCase.RAY_SCALED
        logger.debug("product_seg_seg: point factor %s", alpha)
        return _convex_region(case, (alpha * other.p, alpha * other.q))

    flat1, flat2 = collinear_with_origin(s1, eps), collinear_with_origin(s2, eps)
    if flat1 and flat2:
        return _convex_region(SegmentCase.COLLINEAR, [a * b for a in (s1.p, s1.q) for b in (s2.p, s2.q)])
    if flat1 or flat2:
        line, other = (s1, s2) if flat1 else (s2, s1)
        _, t_lo, t_hi = _ray_parameters(line)
        if t_lo < 0.0 < t_hi or min(abs(line.p), abs(line.q)) <= eps:
            logger.debug("product_seg_seg: 0 in a segment on a line through 0")
            return _zero_in_segment(line, other, eps)
        return _convex_region(
            SegmentCase.RAY_SCALED, [a * b for a in (line.p, line.q) for b in (other.p, other.q)]
        )

    f1, f2 = canonicalize_segment(s1, eps), canonicalize_segment(s2, eps)
    omega = f1.omega * f2.omega
    a1, a2, b1, b2 = f1.a_lo, f1.a_hi, f2.a_lo, f2.a_hi
    if a1 > b1:
        a1, a2, b1, b2 = b1, b2, a1, a2
    al1, al2, be1, be2 = (complex(1, v) for v in (a1, a2, b1, b2))

    if a2 <= b1:
        logger.debug("product_seg_seg: quad case a=[%g,%g] b=[%g,%g]", a1, a2, b1, b2)
        return _convex_region(SegmentCase.QUAD, [omega * x * y for x in (al1, al2) for y in (be1, be2)])
    return overlap_region(omega, a1, a2, b1, b2)


def overlap_region(omega: complex, a1: float, a2: float, b1: float, b2: float) -> SegProductRegion:
    """Product of omega K(1 + i a1, 1 + i a2) K(1 + i b1, 1 + i b2) for a1 <= b1 <= a2."""
    al1, al2, be1, be2 = (complex(1, v) for v in (a1, a2, b1, b2))
    pairs, common = _interval_pairs((a1, a2), (b1, b2))
    cover = tuple(_quad(omega, p, q) for p, q in pairs)
    square = SquarePiece(omega, *common)
    if a2 <= b2:
        chain = (
            ParaArc(omega, b1, a2),
            _line(omega * al2 * al2, omega * al2 * be2),
            _line(omega * al2 * be2, omega * al1 * be2),
            _line(omega * al1 * be2, omega * al1 * be1),
            _line(omega * al1 * be1, omega * be1 * be1),
        )
        centers = StarCenterSet.spanning(
            [omega * x * y for x in (al1, be1) for y in (al2, be2)], complete=False
        )
        case = SegmentCase.OVERLAP
    else:
        chain = (
            ParaArc(omega, b1, b2),
            _line(omega * be2 * be2, omega * al2 * be2),
            _line(omega * al2 * be2, omega * al2 * be1),
            _line(omega * al2 * be1, omega * be1 * be2),
            _line(omega * be1 * be2, omega * al1 * be2),
            _line(omega * al1 * be2, omega * al1 * be1),
            _line(omega * al1 * be1, omega * be1 * be1),
        )
        centers = StarCenterSet.at(omega * be1 * be2)
        case = SegmentCase.NESTED
    logger.debug("product_seg_seg: %s case a=[%g,%g] b=[%g,%g]", case.value, a1, a2, b1, b2)
    return SegProductRegion(case, chain, centers, cover, square)


def seg_square_region(a1: float, a2: float) -> SegProductRegion:
    """The product K(1 + i a1, 1 + i a2)^2."""
    if a1 > a2:
        raise InvalidInput(f"seg_square_region needs a1 <= a2, got {a1} > {a2}")
    al1, al2 = complex(1, a1), complex(1, a2)
    chain = (ParaArc(1.0, a1, a2), _line(al2 * al2, al1 * al2), _line(al1 * al2, al1 * al1))
    return SegProductRegion(SegmentCase.OVERLAP, chain, StarCenterSet.at(al1 * al2), (), SquarePiece(1.0, a1, a2))


def member_seg_seg(s1: Segment, s2: Segment, z, tol: float = DEFAULT_TOL) -> bool:
    return product_seg_seg(s1, s2).contains(z, tol)


def star_centers_general_position(s1: Segment, s2: Segment, eps: float = DEFAULT_EPS) -> StarCenterSet:
    """Star centers of a product of two segments, neither on a line through 0.

    Nested intervals give the single center at the inner segment's endpoint
    product, overlapping ones the hull of the four cross products, and
    disjoint ones a convex product.
    """
    for s in (s1, s2):
        if s.is_degenerate(eps) or collinear_with_origin(s, eps):
            raise DegenerateFrame(f"segment {s} lies on a line through 0")
    return product_seg_seg(s1, s2, eps).star_centers
