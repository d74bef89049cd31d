"""Product membership: the exact engine, the raster oracle and the star checker.

Exact membership rests on z in K1 K2 iff K1 meets z / K2. For polygonal
factors the inversion image z / K2 is bounded by circular arcs; for disk
factors the set {a : |z - a c| <= r |a|} is an Apollonius disk, disk
complement or half-plane.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import ndimage

from .config import DEFAULT_EPS, DEFAULT_TOL, thread_count
from .exceptions import InvalidInput, NotAMember
from .geometry import (
    BoundaryPiece,
    CircArc,
    ConvexBody,
    ConvexPolygon,
    Disk,
    LineSeg,
    Segment,
    as_point,
    as_polygon,
    body_boundary,
    body_extreme_points,
    contains_point,
    contains_points,
    convex_hull,
    cross,
    distance_to_body,
    is_point_body,
    piece_endpoints,
    segment_distance,
)
from .reports import StarWitness
from .segments import product_seg_seg

logger = logging.getLogger(__name__)

DISK_VERTICES = 128
REFINE_RESOLUTION = 1e-6


def _edges(body: ConvexBody) -> list[Segment]:
    if isinstance(body, Segment):
        return [body]
    return body.edges()


def _vertices(body: ConvexBody) -> np.ndarray:
    if isinstance(body, Segment):
        return np.array(body.vertices())
    return np.asarray(body.vertices)


def _max_modulus(body: ConvexBody) -> float:
    if isinstance(body, Disk):
        return abs(body.center) + body.radius
    return float(np.max(np.abs(_vertices(body))))


def member_disk_many(disk: Disk, other: ConvexBody, zs, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Vectorised ``z in disk * other``.

    z = a d with d in D(c, r) iff |z - a c| <= r |a|; the feasible ``a`` form
    a disk (|c| > r), a disk complement (|c| < r) or a half-plane (|c| = r).
    """
    zs = np.asarray(zs, dtype=complex)
    c = disk.center
    r = disk.radius + tol / max(_max_modulus(other), eps)
    k = abs(c) ** 2 - r * r
    g = c.conjugate() * zs
    half_z2 = 0.5 * np.abs(zs) ** 2
    flat = abs(k) <= eps * max(abs(c) ** 2, 1.0)

    if isinstance(other, Disk):
        c1, r1 = other.center, other.radius
        if flat:
            return (c1.conjugate() * g).real + r1 * np.abs(g) >= half_z2
        w = g / k
        rho = r * np.abs(zs) / abs(k)
        gap = np.abs(c1 - w)
        return gap <= r1 + rho if k > 0 else gap + r1 >= rho

    verts = _vertices(other)
    if flat:
        return np.max((verts[None, :].conjugate() * g[:, None]).real, axis=1) >= half_z2
    w = g / k
    rho = r * np.abs(zs) / abs(k)
    if k > 0:
        return distance_to_body(other, w) <= rho
    return np.max(np.abs(w[:, None] - verts[None, :]), axis=1) >= rho


@dataclass(frozen=True)
class ArcRegion:
    """The inversion image ``z / source`` of a polygon or segment avoiding 0."""

    z: complex
    source: ConvexBody
    boundary: tuple[BoundaryPiece, ...]

    def contains(self, w: complex, tol: float = DEFAULT_TOL) -> bool:
        if w == 0:
            return False
        return contains_point(self.source, self.z / w, tol / abs(w))

    def intersects(self, body: ConvexBody, tol: float = DEFAULT_TOL) -> bool:
        """Whether ``body`` meets the region, i.e. ``z`` lies in ``body * source``."""
        for v in _vertices(body):
            if v != 0 and self.contains(complex(v), tol):
                return True
        for b in _vertices(self.source):
            if contains_point(body, self.z / b, tol / abs(b)):
                return True
        delta = tol / _max_modulus(self.source)
        for edge in _edges(body):
            for piece in self.boundary:
                if _segment_piece_distance(edge.p, edge.q, piece) <= delta:
                    return True
        return False


def _invert_edge(z: complex, p: complex, q: complex, eps: float) -> BoundaryPiece:
    if p == q:
        return LineSeg.between(z / p, z / p)
    n = -1j * (q - p) / abs(q - p)
    d = (n.conjugate() * p).real
    if abs(d) <= eps * max(abs(p), abs(q)):
        return LineSeg.between(z / p, z / q)
    center = z * n.conjugate() / (2 * d)
    radius = abs(z) / (2 * abs(d))
    start = math.atan2((z / p - center).imag, (z / p - center).real)
    end = math.atan2((z / q - center).imag, (z / q - center).real)
    origin = math.atan2(-center.imag, -center.real)
    sweep = (end - start) % (2 * math.pi)
    if (origin - start) % (2 * math.pi) < sweep:
        sweep -= 2 * math.pi
    return CircArc(center, radius, start, sweep)


def inversion_region(source: ConvexBody, z, eps: float = DEFAULT_EPS) -> ArcRegion:
    z = as_point(z)
    if isinstance(source, Disk):
        raise InvalidInput("disks use the Apollonius path, not an arc region")
    if z == 0:
        raise InvalidInput("the inversion image of 0 is not bounded")
    if contains_point(source, 0, eps):
        raise InvalidInput("0 lies in the factor; its inversion image is unbounded")
    vs = list(_vertices(source))
    if len(vs) == 2:
        pairs = [(vs[0], vs[1]), (vs[1], vs[0])]
    else:
        pairs = [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]
    pieces = tuple(_invert_edge(z, complex(p), complex(q), eps) for p, q in pairs)
    return ArcRegion(z, source, pieces)


def _point_arc_distance(x: complex, arc: CircArc) -> float:
    rel = x - arc.center
    if arc.contains_angle(math.atan2(rel.imag, rel.real)):
        return abs(abs(rel) - arc.radius)
    start, end = piece_endpoints(arc)
    return min(abs(x - start), abs(x - end))


def _segment_segment_distance(p: complex, q: complex, s: complex, t: complex) -> float:
    r, u = q - p, t - s
    denom = cross(0j, r, u)
    if denom != 0:
        a = cross(0j, s - p, u) / denom
        b = cross(0j, s - p, r) / denom
        if 0 <= a <= 1 and 0 <= b <= 1:
            return 0.0
    ends = np.array([s, t])
    return float(min(segment_distance(p, q, ends).min(), segment_distance(s, t, np.array([p, q])).min()))


def _segment_piece_distance(p: complex, q: complex, piece: BoundaryPiece) -> float:
    if isinstance(piece, LineSeg):
        return _segment_segment_distance(p, q, piece.segment.p, piece.segment.q)
    c, r = piece.center, piece.radius
    d = q - p
    A = abs(d) ** 2
    candidates = [p, q]
    if A > 0:
        B = 2 * (d.conjugate() * (p - c)).real
        C = abs(p - c) ** 2 - r * r
        disc = B * B - 4 * A * C
        if disc >= 0:
            for t in ((-B - math.sqrt(disc)) / (2 * A), (-B + math.sqrt(disc)) / (2 * A)):
                if 0 <= t <= 1:
                    x = p + t * d
                    if _arc_hit(piece, x):
                        return 0.0
        candidates.append(p + min(max(-B / (2 * A), 0.0), 1.0) * d)
    best = min(_point_arc_distance(x, piece) for x in candidates)
    return min(best, float(segment_distance(p, q, np.array(piece_endpoints(piece))).min()))


def _arc_hit(arc: CircArc, x: complex) -> bool:
    rel = x - arc.center
    return bool(arc.contains_angle(math.atan2(rel.imag, rel.real)))


def _scaled_member(alpha: complex, body: ConvexBody, zs: np.ndarray, tol: float) -> np.ndarray:
    if abs(alpha) == 0:
        return np.abs(zs) <= tol
    return contains_points(body, zs / alpha, tol / abs(alpha))


def member_many(K1: ConvexBody, K2: ConvexBody, zs, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS) -> np.ndarray:
    """Vectorised exact membership ``dist(z, K1 K2) <= tol`` (up to first order in tol)."""
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    for first, second in ((K1, K2), (K2, K1)):
        alpha = is_point_body(first, 0.0)
        if alpha is not None:
            return _scaled_member(alpha, second, zs, tol)
    if isinstance(K1, Disk):
        return member_disk_many(K1, K2, zs, tol, eps)
    if isinstance(K2, Disk):
        return member_disk_many(K2, K1, zs, tol, eps)
    if isinstance(K1, Segment) and isinstance(K2, Segment):
        return product_seg_seg(K1, K2, eps).contains_many(zs, tol)

    hit = np.zeros(zs.shape, dtype=bool)
    for first, second in ((K1, K2), (K2, K1)):
        for v in _vertices(first):
            hit |= _scaled_member(complex(v), second, zs, tol)
    for e in _edges(K1):
        for f in _edges(K2):
            if e.is_degenerate(0.0) or f.is_degenerate(0.0):
                continue
            hit |= product_seg_seg(e, f, eps).contains_many(zs, tol)
    return hit


def member_exact(K1: ConvexBody, K2: ConvexBody, z, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS) -> bool:
    z = as_point(z)
    polygonal = not isinstance(K1, Disk) and not isinstance(K2, Disk)
    if polygonal and z != 0 and is_point_body(K1, 0.0) is None and is_point_body(K2, 0.0) is None:
        if not (isinstance(K1, Segment) and isinstance(K2, Segment)):
            if not contains_point(K2, 0, eps):
                return inversion_region(K2, z, eps).intersects(K1, tol)
            if not contains_point(K1, 0, eps):
                return inversion_region(K1, z, eps).intersects(K2, tol)
    return bool(member_many(K1, K2, np.array([z]), tol, eps)[0])


@dataclass(frozen=True, eq=False)
class RasterGrid:
    """Occupancy of an n x n grid; row j covers y in [y_min + j h, y_min + (j + 1) h]."""

    bbox: tuple[float, float, float, float]
    n: int
    occupancy: np.ndarray

    @property
    def cell(self) -> float:
        return (self.bbox[1] - self.bbox[0]) / self.n

    def cells_of(self, zs) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        zs = np.asarray(zs, dtype=complex)
        i = np.floor((zs.real - self.bbox[0]) / self.cell).astype(int)
        j = np.floor((zs.imag - self.bbox[2]) / self.cell).astype(int)
        inside = (i >= 0) & (i < self.n) & (j >= 0) & (j < self.n)
        return np.clip(i, 0, self.n - 1), np.clip(j, 0, self.n - 1), inside

    def occupied(self, zs) -> np.ndarray:
        i, j, inside = self.cells_of(zs)
        return inside & self.occupancy[j, i]

    def cell_centers(self) -> np.ndarray:
        x0, _, y0, _ = self.bbox
        mids = (np.arange(self.n) + 0.5) * self.cell
        return (x0 + mids)[None, :] + 1j * (y0 + mids)[:, None]

    def boundary_band(self, width: int = 2) -> np.ndarray:
        occ = self.occupancy
        if not occ.any() or occ.all():
            return np.zeros_like(occ)
        return ndimage.binary_dilation(occ, iterations=width) & ndimage.binary_dilation(~occ, iterations=width)

    def hole_labels(self) -> tuple[np.ndarray, int]:
        """4-connected empty components that do not touch the grid border."""
        labels, count = ndimage.label(~self.occupancy)
        border = np.unique(np.concatenate([labels[0], labels[-1], labels[:, 0], labels[:, -1]]))
        holes = np.setdiff1d(np.arange(1, count + 1), border)
        mask = np.isin(labels, holes)
        relabelled, n_holes = ndimage.label(mask)
        return relabelled, n_holes

    def hole_count(self) -> int:
        return self.hole_labels()[1]

    def hole_points(self) -> list[complex]:
        """One cell center per hole, the cell farthest from occupied cells."""
        labels, count = self.hole_labels()
        centers = self.cell_centers()
        points = []
        for k in range(1, count + 1):
            depth = ndimage.distance_transform_edt(labels == k)
            points.append(complex(centers[np.unravel_index(np.argmax(depth), depth.shape)]))
        return points

    def agreement(self, member_mask: np.ndarray, zs, band: int = 2) -> float:
        """Fraction of ``zs`` off the boundary band where the grid agrees with ``member_mask``."""
        i, j, inside = self.cells_of(zs)
        off_band = ~self.boundary_band(band)[j, i] | ~inside
        grid = self.occupied(zs)
        keep = off_band
        if not keep.any():
            return 1.0
        return float(np.mean(grid[keep] == np.asarray(member_mask)[keep]))

    def union(self, other: "RasterGrid") -> "RasterGrid":
        if other.n != self.n or not np.allclose(other.bbox, self.bbox):
            raise InvalidInput("grids must share size and bounding box")
        return RasterGrid(self.bbox, self.n, self.occupancy | other.occupancy)


def _factor_boundary(body: ConvexBody, m: int, rng: np.random.Generator | None) -> np.ndarray:
    """Ordered boundary samples, closed into a loop for 2D bodies."""
    if isinstance(body, Disk):
        phase = rng.uniform() if rng is not None else 0.0
        return body.center + body.radius * np.exp(2j * np.pi * (np.arange(m + 1) + phase) / m)
    pts = body_boundary(body, m)
    if isinstance(body, ConvexPolygon) and len(body) >= 3:
        pts = np.append(pts, pts[0])
    return pts


def _is_flat(body: ConvexBody) -> bool:
    return isinstance(body, Segment) or (isinstance(body, ConvexPolygon) and len(body) <= 2)


def _product_shapes(K1: ConvexBody, K2: ConvexBody, m: int, rng) -> list[np.ndarray]:
    """Convex pieces covering K1 K2: hulls of a K2 for consecutive boundary samples a."""
    if _is_flat(K1):
        terms = [(K1, K2)]
    elif _is_flat(K2):
        terms = [(K2, K1)]
    else:
        terms = [(K1, K2), (K2, K1)]
    shapes = []
    for moving, fixed in terms:
        verts = np.asarray(as_polygon(fixed, DISK_VERTICES).vertices)
        samples = _factor_boundary(moving, m, rng)
        if len(samples) == 1:
            shapes.append(samples[0] * verts)
            continue
        for a0, a1 in zip(samples[:-1], samples[1:]):
            hull = convex_hull(np.concatenate([a0 * verts, a1 * verts]))
            shapes.append(np.asarray(hull.vertices))
    return shapes


def _square_bbox(points: np.ndarray) -> tuple[float, float, float, float]:
    x0, x1 = points.real.min(), points.real.max()
    y0, y1 = points.imag.min(), points.imag.max()
    half = max(x1 - x0, y1 - y0) / 2 * 1.05
    if half == 0:
        half = 1.0
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    return (cx - half, cx + half, cy - half, cy + half)


def _fill_stripe(shapes, bbox, n: int, j0: int, j1: int) -> np.ndarray:
    x0, x1, y0, _ = bbox
    h = (x1 - x0) / n
    diff = np.zeros((j1 - j0, n + 1), dtype=np.int32)
    for verts in shapes:
        if len(verts) < 2:
            continue
        ys_lo = int(max(j0, math.floor((verts.imag.min() - y0) / h - 0.5)))
        ys_hi = int(min(j1, math.ceil((verts.imag.max() - y0) / h + 0.5)))
        if ys_hi <= ys_lo:
            continue
        rows = np.arange(ys_lo, ys_hi)
        y = (y0 + (rows + 0.5) * h)[:, None]
        a, b = verts, np.roll(verts, -1)
        lo, hi = np.minimum(a.imag, b.imag), np.maximum(a.imag, b.imag)
        hit = (y >= lo) & (y <= hi) & (hi > lo)
        span = np.where(hi > lo, b.imag - a.imag, 1.0)
        x = a.real + (y - a.imag) / span * (b.real - a.real)
        xmin = np.where(hit, x, np.inf).min(axis=1)
        xmax = np.where(hit, x, -np.inf).max(axis=1)
        ok = xmin <= xmax
        if not ok.any():
            continue
        il = np.clip(np.floor((xmin[ok] - x0) / h).astype(int), 0, n - 1)
        ih = np.clip(np.floor((xmax[ok] - x0) / h).astype(int), 0, n - 1)
        r = rows[ok] - j0
        np.add.at(diff, (r, il), 1)
        np.add.at(diff, (r, ih + 1), -1)
    return np.cumsum(diff, axis=1)[:, :n] > 0


def _rasterise(shapes: list[np.ndarray], bbox, n: int, threads: int | None) -> np.ndarray:
    threads = threads or thread_count()
    bounds = np.linspace(0, n, min(threads, n) + 1).astype(int)
    with ThreadPoolExecutor(max_workers=len(bounds) - 1) as pool:
        stripes = list(pool.map(lambda k: _fill_stripe(shapes, bbox, n, bounds[k], bounds[k + 1]), range(len(bounds) - 1)))
    occ = np.concatenate(stripes, axis=0)
    x0, _, y0, _ = bbox
    h = (bbox[1] - x0) / n
    verts = np.concatenate(shapes)
    i = np.clip(np.floor((verts.real - x0) / h).astype(int), 0, n - 1)
    j = np.clip(np.floor((verts.imag - y0) / h).astype(int), 0, n - 1)
    occ[j, i] = True
    return occ


def raster_union(
    pairs: Sequence[tuple[ConvexBody, ConvexBody]],
    n: int = 1024,
    m: int = 512,
    threads: int | None = None,
    seed: int = 0,
) -> RasterGrid:
    """Rasterise the union of several products on one shared grid."""
    if n < 64 or m < 64:
        raise InvalidInput("raster needs n >= 64 and m >= 64")
    if not pairs:
        raise InvalidInput("raster needs at least one factor pair")
    rng = np.random.default_rng(seed) if seed else None
    shapes = [s for K1, K2 in pairs for s in _product_shapes(K1, K2, m, rng)]
    bbox = _square_bbox(np.concatenate(shapes))
    logger.debug("raster: %d shapes on %dx%d grid, bbox=%s", len(shapes), n, n, bbox)
    return RasterGrid(bbox, n, _rasterise(shapes, bbox, n, threads))


def raster_product(
    K1: ConvexBody, K2: ConvexBody, n: int = 1024, m: int = 512, threads: int | None = None, seed: int = 0
) -> RasterGrid:
    return raster_union([(K1, K2)], n, m, threads, seed)


def write_pgm(grid: RasterGrid, path) -> Path:
    """Binary PGM, maxval 1, occupied = 1, first row at the top (y_max)."""
    path = Path(path)
    header = f"P5\n{grid.n} {grid.n}\n1\n".encode("ascii")
    path.write_bytes(header + np.flipud(grid.occupancy).astype(np.uint8).tobytes())
    return path


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    fields, pos = [], 0
    while len(fields) < 4:
        while data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end:end + 1].isspace():
            end += 1
        fields.append(data[pos:end].decode("ascii"))
        pos = end
    if fields[0] != "P5":
        raise InvalidInput(f"not a binary PGM: {fields[0]!r}")
    width, height = int(fields[1]), int(fields[2])
    pixels = np.frombuffer(data[pos + 1:pos + 1 + width * height], dtype=np.uint8)
    if pixels.size != width * height:
        raise InvalidInput("truncated PGM data")
    return np.flipud(pixels.reshape(height, width) > 0)


class StarCheck(NamedTuple):
    ok: bool
    witness: StarWitness | None


Member = Callable[[np.ndarray], np.ndarray]


def _refine(member: Member, p: complex, q: complex, t_in: float, t_out: float) -> float:
    """Shrink a member/non-member bracket on K(p, q); returns a non-member parameter."""
    while t_out - t_in > REFINE_RESOLUTION:
        mid = 0.5 * (t_in + t_out)
        if member(np.array([p + mid * (q - p)]))[0]:
            t_in = mid
        else:
            t_out = mid
    return t_out


def sweep_segments(member: Member, p: complex, a: np.ndarray, b: np.ndarray, seg_samples: int = 64) -> StarCheck:
    """Test K(p, a_i b_j) for all sample pairs; the first exit is refined into a witness."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    ii, jj = np.meshgrid(np.arange(len(a)), np.arange(len(b)), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    q = a[ii] * b[jj]
    ts = np.linspace(0.0, 1.0, max(seg_samples, 2))
    pts = p + ts[None, :] * (q - p)[:, None]
    inside = member(pts.ravel()).reshape(pts.shape)
    bad = np.flatnonzero(~inside.all(axis=1))
    if bad.size == 0:
        return StarCheck(True, None)
    k = bad[0]
    first_out = int(np.flatnonzero(~inside[k])[0])
    t = ts[first_out]
    if first_out > 0:
        t = _refine(member, p, q[k], ts[first_out - 1], t)
    witness = StarWitness(complex(a[ii[k]]), complex(b[jj[k]]), float(t), complex(p + t * (q[k] - p)))
    logger.debug("star check failed at p=%s witness=%s", p, witness)
    return StarCheck(False, witness)


def _product_member(K1: ConvexBody, K2: ConvexBody, tol: float) -> Member:
    return lambda zs: member_many(K1, K2, zs, tol)


def check_segments(
    K1: ConvexBody,
    K2: ConvexBody,
    p: complex,
    a: np.ndarray,
    b: np.ndarray,
    seg_samples: int = 64,
    tol: float = DEFAULT_TOL,
) -> StarCheck:
    return sweep_segments(_product_member(K1, K2, tol), p, a, b, seg_samples)


def check_star_center(
    K1: ConvexBody,
    K2: ConvexBody,
    p,
    boundary_samples: int = 720,
    seg_samples: int = 64,
    tol: float = DEFAULT_TOL,
) -> StarCheck:
    """Sampled test that every K(p, a b), a in the boundary of K1 and b of K2, stays in K1 K2."""
    p = as_point(p)
    if not member_exact(K1, K2, p, tol):
        raise NotAMember(f"{p} is not in the product")
    k = max(int(math.ceil(math.sqrt(boundary_samples))), 2)
    return check_segments(K1, K2, p, body_boundary(K1, k), body_boundary(K2, k), seg_samples, tol)


def check_star_center_extreme(
    K1: ConvexBody, K2: ConvexBody, p, seg_samples: int = 128, tol: float = DEFAULT_TOL, disk_samples: int = 64
) -> StarCheck:
    """Test only the segments from ``p`` to products of extreme points."""
    p = as_point(p)
    if not member_exact(K1, K2, p, tol):
        raise NotAMember(f"{p} is not in the product")
    a = body_extreme_points(K1, disk_samples)
    b = body_extreme_points(K2, disk_samples)
    return check_segments(K1, K2, p, a, b, seg_samples, tol)


def exclusion_interval(
    K1: ConvexBody, K2: ConvexBody, p, q, samples: int = 2000, tol: float = DEFAULT_TOL
) -> tuple[float, float] | None:
    """First maximal parameter interval where p + t (q - p) leaves the product."""
    p, q = as_point(p), as_point(q)
    member = _product_member(K1, K2, tol)
    ts = np.linspace(0.0, 1.0, samples)
    inside = member(p + ts * (q - p))
    out = np.flatnonzero(~inside)
    if out.size == 0:
        return None
    first = int(out[0])
    last = first
    while last + 1 < samples and not inside[last + 1]:
        last += 1
    lo = _refine(member, p, q, ts[first - 1], ts[first]) if first > 0 else 0.0
    if last + 1 < samples:
        hi = 1.0 - _refine(member, q, p, 1.0 - ts[last + 1], 1.0 - ts[last])
    else:
        hi = 1.0
    return lo, hi
