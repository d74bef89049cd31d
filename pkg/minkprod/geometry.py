"""Planar geometry kernel on complex scalars.

Points of the plane are Python ``complex`` values; bulk work uses numpy
``complex128`` arrays. Bodies are immutable and normalised on construction.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_EPS
from .exceptions import InvalidInput

logger = logging.getLogger(__name__)

CScalar = complex


def as_point(z) -> complex:
    try:
        w = complex(z)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"not a complex scalar: {z!r}") from exc
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise InvalidInput(f"non-finite scalar: {w!r}")
    return w


def cross(a, b, c):
    """Twice the signed area of (a, b, c); positive for a left turn."""
    return ((b - a).conjugate() * (c - a)).imag


def segment_distance(p: complex, q: complex, zs) -> np.ndarray:
    zs = np.asarray(zs, dtype=complex)
    d = q - p
    dd = abs(d) ** 2
    if dd == 0.0:
        return np.abs(zs - p)
    t = np.clip(((zs - p) * d.conjugate()).real / dd, 0.0, 1.0)
    return np.abs(zs - (p + t * d))


@dataclass(frozen=True)
class Segment:
    p: complex
    q: complex

    def __post_init__(self):
        object.__setattr__(self, "p", as_point(self.p))
        object.__setattr__(self, "q", as_point(self.q))

    @property
    def length(self) -> float:
        return abs(self.q - self.p)

    def is_degenerate(self, eps: float = DEFAULT_EPS) -> bool:
        return self.length <= eps

    def point_at(self, t: float) -> complex:
        return self.p + t * (self.q - self.p)

    def vertices(self) -> Tuple[complex, ...]:
        return (self.p,) if self.p == self.q else (self.p, self.q)

    def scaled(self, c: complex) -> "Segment":
        return Segment(c * self.p, c * self.q)

    def conjugate(self) -> "Segment":
        return Segment(self.p.conjugate(), self.q.conjugate())

    def to_polygon(self) -> "ConvexPolygon":
        return ConvexPolygon((self.p, self.q))


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex hull of its vertices, stored counter-clockwise without repeats.

    One vertex is a point, two vertices are a segment.
    """

    vertices: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", _hull_vertices(self.vertices, DEFAULT_EPS))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> List[Segment]:
        vs = self.vertices
        if len(vs) == 1:
            return [Segment(vs[0], vs[0])]
        if len(vs) == 2:
            return [Segment(vs[0], vs[1])]
        return [Segment(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def area(self) -> float:
        vs = self.vertices
        return 0.5 * sum(cross(0j, vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def centroid(self) -> complex:
        return complex(np.mean(np.asarray(self.vertices)))

    def diameter(self) -> float:
        vs = np.asarray(self.vertices)
        return float(np.max(np.abs(vs[:, None] - vs[None, :])))

    def scaled(self, c: complex) -> "ConvexPolygon":
        return ConvexPolygon(tuple(c * v for v in self.vertices))

    def conjugate(self) -> "ConvexPolygon":
        return ConvexPolygon(tuple(v.conjugate() for v in self.vertices))

    def to_segment(self) -> Segment:
        if len(self.vertices) > 2:
            raise InvalidInput("polygon with more than two vertices is not a segment")
        return Segment(self.vertices[0], self.vertices[-1])


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        r = float(self.radius)
        if not math.isfinite(r) or r < 0:
            raise InvalidInput(f"disk radius must be finite and >= 0, got {self.radius!r}")
        object.__setattr__(self, "radius", r)

    def boundary_point(self, theta: float) -> complex:
        return self.center + self.radius * complex(math.cos(theta), math.sin(theta))

    def polygon(self, n: int = 128, circumscribed: bool = False) -> ConvexPolygon:
        if self.radius == 0.0:
            return ConvexPolygon((self.center,))
        r = self.radius / math.cos(math.pi / n) if circumscribed else self.radius
        thetas = 2 * np.pi * np.arange(n) / n
        return ConvexPolygon(tuple(self.center + r * np.exp(1j * thetas)))

    def scaled(self, c: complex) -> "Disk":
        return Disk(c * self.center, abs(c) * self.radius)

    def conjugate(self) -> "Disk":
        return Disk(self.center.conjugate(), self.radius)


ConvexBody = Union[Segment, ConvexPolygon, Disk]


@dataclass(frozen=True)
class LineSeg:
    segment: Segment

    @classmethod
    def between(cls, a: complex, b: complex) -> "LineSeg":
        return cls(Segment(a, b))


@dataclass(frozen=True)
class ParaArc:
    """The curve {scale * (1 + i s)^2 : s in [s_lo, s_hi]}."""

    scale: complex
    s_lo: float
    s_hi: float

    def __post_init__(self):
        object.__setattr__(self, "scale", as_point(self.scale))
        if not self.s_lo <= self.s_hi:
            raise InvalidInput(f"ParaArc needs s_lo <= s_hi, got {self.s_lo} > {self.s_hi}")


@dataclass(frozen=True)
class CircArc:
    center: complex
    radius: float
    theta_start: float
    sweep: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if self.radius < 0:
            raise InvalidInput("CircArc radius must be >= 0")
        if abs(self.sweep) > 2 * math.pi + DEFAULT_EPS:
            raise InvalidInput("CircArc sweep must satisfy |sweep| <= 2*pi")

    def contains_angle(self, theta, slack: float = 0.0):
        """Whether angles lie on the arc, vectorised over ``theta``."""
        rel = np.mod(np.asarray(theta) - self.theta_start, 2 * np.pi)
        if self.sweep >= 0:
            return (rel <= self.sweep + slack) | (rel >= 2 * np.pi - slack)
        return (rel >= 2 * np.pi + self.sweep - slack) | (rel <= slack)


BoundaryPiece = Union[LineSeg, ParaArc, CircArc]


def _piece_eval(piece: BoundaryPiece, ts):
    ts = np.asarray(ts, dtype=float)
    if isinstance(piece, LineSeg):
        seg = piece.segment
        return seg.p + ts * (seg.q - seg.p)
    if isinstance(piece, ParaArc):
        s = piece.s_lo + ts * (piece.s_hi - piece.s_lo)
        return piece.scale * (1 + 1j * s) ** 2
    if isinstance(piece, CircArc):
        return piece.center + piece.radius * np.exp(1j * (piece.theta_start + ts * piece.sweep))
    raise InvalidInput(f"unknown boundary piece {piece!r}")


def eval_boundary_piece(piece: BoundaryPiece, t: float) -> complex:
    if not 0.0 <= t <= 1.0:
        raise InvalidInput(f"piece parameter must lie in [0, 1], got {t}")
    return complex(_piece_eval(piece, t))


def piece_points(piece: BoundaryPiece, n: int) -> np.ndarray:
    return np.atleast_1d(_piece_eval(piece, np.linspace(0.0, 1.0, n)))


def piece_tangents(piece: BoundaryPiece, ts) -> np.ndarray:
    """Unnormalised derivative of the parametrisation at ``ts``."""
    ts = np.asarray(ts, dtype=float)
    if isinstance(piece, LineSeg):
        return np.full(ts.shape, piece.segment.q - piece.segment.p, dtype=complex)
    if isinstance(piece, ParaArc):
        s = piece.s_lo + ts * (piece.s_hi - piece.s_lo)
        return piece.scale * 2j * (1 + 1j * s) * (piece.s_hi - piece.s_lo)
    if isinstance(piece, CircArc):
        return 1j * piece.sweep * piece.radius * np.exp(1j * (piece.theta_start + ts * piece.sweep))
    raise InvalidInput(f"unknown boundary piece {piece!r}")


def piece_endpoints(piece: BoundaryPiece) -> Tuple[complex, complex]:
    return complex(_piece_eval(piece, 0.0)), complex(_piece_eval(piece, 1.0))


def chain_points(chain: Sequence[BoundaryPiece], per_piece: int = 64) -> np.ndarray:
    parts = [piece_points(piece, per_piece)[:-1] for piece in chain]
    if chain:
        parts.append(np.array([piece_endpoints(chain[-1])[1]]))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)


def chain_is_closed(chain: Sequence[BoundaryPiece], eps: float = DEFAULT_EPS) -> bool:
    if not chain:
        return False
    ends = [piece_endpoints(piece) for piece in chain]
    return all(abs(ends[k][1] - ends[(k + 1) % len(ends)][0]) <= eps for k in range(len(ends)))


def polygon_chain(poly: ConvexPolygon) -> List[BoundaryPiece]:
    vs = poly.vertices
    if len(vs) == 1:
        return [LineSeg.between(vs[0], vs[0])]
    if len(vs) == 2:
        return [LineSeg.between(vs[0], vs[1]), LineSeg.between(vs[1], vs[0])]
    return [LineSeg.between(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _hull_vertices(points: Iterable, eps: float) -> Tuple[complex, ...]:
    pts = np.array([as_point(z) for z in points], dtype=complex)
    if pts.size == 0:
        raise InvalidInput("convex hull needs at least one point")
    span = float(np.max(np.abs(pts - pts[0])))
    quantum = eps * max(span, 1.0)
    coords = np.column_stack([pts.real, pts.imag])
    keys = np.round(coords / quantum) if quantum > 0 else coords
    _, first = np.unique(keys, axis=0, return_index=True)
    pts = pts[np.sort(first)]
    pts = pts[np.lexsort((pts.imag, pts.real))]
    uniq: List[complex] = [complex(z) for z in pts]
    if len(uniq) == 1:
        return (uniq[0],)
    turn_tol = eps * span * span

    def half(seq):
        chain: List[complex] = []
        for z in seq:
            while len(chain) >= 2 and cross(chain[-2], chain[-1], z) <= turn_tol:
                chain.pop()
            chain.append(z)
        return chain

    lower = half(uniq)
    upper = half(reversed(uniq))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        return (uniq[0], uniq[-1])
    return tuple(hull)


def convex_hull(points: Iterable, eps: float = DEFAULT_EPS) -> ConvexPolygon:
    """Counter-clockwise hull with interior and collinear points removed."""
    poly = ConvexPolygon.__new__(ConvexPolygon)
    object.__setattr__(poly, "vertices", _hull_vertices(points, eps))
    return poly


def contains_points(body: ConvexBody, zs, tol: float = DEFAULT_EPS) -> np.ndarray:
    """Vectorised ``dist(z, body) <= tol``."""
    zs = np.asarray(zs, dtype=complex)
    if isinstance(body, Disk):
        return np.abs(zs - body.center) <= body.radius + tol
    if isinstance(body, Segment):
        return segment_distance(body.p, body.q, zs) <= tol
    vs = body.vertices
    if len(vs) == 1:
        return np.abs(zs - vs[0]) <= tol
    if len(vs) == 2:
        return segment_distance(vs[0], vs[1], zs) <= tol
    inside = np.ones(zs.shape, dtype=bool)
    near = np.zeros(zs.shape, dtype=bool)
    for k in range(len(vs)):
        a, b = vs[k], vs[(k + 1) % len(vs)]
        inside &= cross(a, b, zs) >= 0
        near |= segment_distance(a, b, zs) <= tol
    return inside | near


def contains_point(body: ConvexBody, z, tol: float = DEFAULT_EPS) -> bool:
    if tol < 0:
        raise InvalidInput("tol must be >= 0")
    return bool(contains_points(body, np.array([as_point(z)]), tol)[0])


def distance_to_body(body: ConvexBody, zs) -> np.ndarray:
    zs = np.asarray(zs, dtype=complex)
    if isinstance(body, Disk):
        return np.maximum(np.abs(zs - body.center) - body.radius, 0.0)
    edges = body.edges() if isinstance(body, ConvexPolygon) else [body]
    d = np.min([segment_distance(e.p, e.q, zs) for e in edges], axis=0)
    if isinstance(body, ConvexPolygon) and len(body.vertices) >= 3:
        d = np.where(contains_points(body, zs, 0.0), 0.0, d)
    return d


def as_polygon(body: ConvexBody, disk_vertices: int = 128, circumscribed: bool = False) -> ConvexPolygon:
    if isinstance(body, ConvexPolygon):
        return body
    if isinstance(body, Segment):
        return body.to_polygon()
    return body.polygon(disk_vertices, circumscribed)


def is_point_body(body: ConvexBody, eps: float = DEFAULT_EPS) -> Optional[complex]:
    """The single point of a degenerate body, else None."""
    if isinstance(body, Disk):
        return body.center if body.radius <= eps else None
    if isinstance(body, Segment):
        return body.p if body.is_degenerate(eps) else None
    return body.vertices[0] if len(body.vertices) == 1 else None


def scale_body(body: ConvexBody, c: complex) -> ConvexBody:
    return body.scaled(c)


def body_boundary(body: ConvexBody, n: int) -> np.ndarray:
    """About ``n`` boundary points, always including every vertex."""
    n = max(int(n), 1)
    if isinstance(body, Disk):
        return body.center + body.radius * np.exp(2j * np.pi * np.arange(n) / n)
    if isinstance(body, Segment):
        return body.p + np.linspace(0.0, 1.0, max(n, 2)) * (body.q - body.p)
    vs = body.vertices
    if len(vs) == 1:
        return np.array([vs[0]])
    edges = body.edges()
    lengths = np.array([e.length for e in edges])
    counts = np.maximum(1, np.round(n * lengths / lengths.sum()).astype(int))
    parts = [e.p + np.arange(k) / k * (e.q - e.p) for e, k in zip(edges, counts)]
    if len(vs) == 2:
        parts.append(np.array([vs[1]]))
    return np.concatenate(parts)


def body_extreme_points(body: ConvexBody, disk_samples: int = 128) -> np.ndarray:
    if isinstance(body, Disk):
        return body_boundary(body, disk_samples)
    if isinstance(body, Segment):
        return np.array(body.vertices(), dtype=complex)
    return np.array(body.vertices)


def body_interior_grid(body: ConvexBody, n: int) -> np.ndarray:
    """Points of ``body`` on a regular grid of about ``n`` nodes over its bbox."""
    ext = body_extreme_points(body, 64)
    if isinstance(body, Disk):
        ext = np.concatenate([ext, [body.center]])
    x0, x1 = ext.real.min(), ext.real.max()
    y0, y1 = ext.imag.min(), ext.imag.max()
    side = max(int(math.sqrt(max(n, 1))), 2)
    xs, ys = np.meshgrid(np.linspace(x0, x1, side), np.linspace(y0, y1, side))
    grid = (xs + 1j * ys).ravel()
    return grid[contains_points(body, grid, 1e-12)]


def hull_bound(k1: ConvexBody, k2: ConvexBody, disk_vertices: int = 64) -> ConvexPolygon:
    """Convex hull of products of extreme points, a superset of the product."""
    v1 = np.asarray(as_polygon(k1, disk_vertices, circumscribed=True).vertices)
    v2 = np.asarray(as_polygon(k2, disk_vertices, circumscribed=True).vertices)
    return convex_hull(np.outer(v1, v2).ravel())


def clip_halfplane(vertices: Sequence[complex], normal: complex, offset: float) -> List[complex]:
    """Keep the part of a convex polygon with Re(conj(normal) z) <= offset."""
    out: List[complex] = []
    n = len(vertices)
    if n == 0:
        return out

    def side(z):
        return (normal.conjugate() * z).real - offset

    if n == 1:
        return list(vertices) if side(vertices[0]) <= 0 else []
    for k in range(n):
        a, b = vertices[k], vertices[(k + 1) % n]
        sa, sb = side(a), side(b)
        if sa <= 0:
            out.append(a)
        if (sa < 0 < sb) or (sb < 0 < sa):
            out.append(a + (b - a) * (sa / (sa - sb)))
    return out


def _halfplanes(poly: ConvexPolygon) -> List[Tuple[complex, float]]:
    vs = poly.vertices
    planes = []
    for k in range(len(vs)):
        a, b = vs[k], vs[(k + 1) % len(vs)]
        normal = -1j * (b - a)
        planes.append((normal, (normal.conjugate() * a).real))
    return planes


def convex_intersection_point(a: ConvexBody, b: ConvexBody, eps: float = DEFAULT_EPS) -> Optional[complex]:
    """Some point of ``a`` and ``b`` in common, or None when they are disjoint."""
    if isinstance(a, Disk) and isinstance(b, Disk):
        gap = abs(b.center - a.center)
        if gap > a.radius + b.radius + eps:
            return None
        if gap <= eps:
            return a.center
        u = (b.center - a.center) / gap
        lo, hi = max(-a.radius, gap - b.radius), min(a.radius, gap + b.radius)
        return a.center + u * 0.5 * (lo + hi)
    if isinstance(a, Disk):
        a, b = b, a
    if isinstance(b, Disk):
        poly = as_polygon(a)
        d = float(distance_to_body(poly, np.array([b.center]))[0])
        if d > b.radius + eps:
            return None
        if d == 0.0:
            return b.center
        return _closest_point(poly, b.center)
    pa, pb = as_polygon(a), as_polygon(b)
    if len(pb) < 3 and len(pa) >= 3:
        pa, pb = pb, pa
    if len(pb) >= 3:
        pts = list(pa.vertices)
        if len(pts) == 2:
            pts = [pts[0], pts[1]]
        scale = max(1.0, max(abs(v) for v in pb.vertices))
        for normal, offset in _halfplanes(pb):
            pts = clip_halfplane(pts, normal / abs(normal), offset / abs(normal) + eps * scale)
            if not pts:
                return None
        return complex(np.mean(pts))
    return _small_intersection(pa, pb, eps)


def _closest_point(poly: ConvexPolygon, z: complex) -> complex:
    best, best_d = poly.vertices[0], abs(z - poly.vertices[0])
    for e in poly.edges():
        d = e.q - e.p
        dd = abs(d) ** 2
        t = 0.0 if dd == 0 else min(max(((z - e.p) * d.conjugate()).real / dd, 0.0), 1.0)
        w = e.p + t * d
        if abs(z - w) < best_d:
            best, best_d = w, abs(z - w)
    return best


def _small_intersection(pa: ConvexPolygon, pb: ConvexPolygon, eps: float) -> Optional[complex]:
    """Intersection of two bodies with at most two vertices each."""
    for v in pa.vertices:
        if contains_point(pb, v, eps):
            return v
    for v in pb.vertices:
        if contains_point(pa, v, eps):
            return v
    if len(pa) == 2 and len(pb) == 2:
        p, r = pa.vertices[0], pa.vertices[1] - pa.vertices[0]
        q, s = pb.vertices[0], pb.vertices[1] - pb.vertices[0]
        denom = cross(0j, r, s)
        if abs(denom) > eps * abs(r) * abs(s):
            t = cross(0j, q - p, s) / denom
            u = cross(0j, q - p, r) / denom
            if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
                return p + t * r
    return None
