"""Star-shapedness of polygon products and of longer products.

The product of two polygons is the union of its edge-pair segment
products, so every concave boundary piece of those products that is also
on the outline of the whole product cuts the plane of possible star
centers down by a half-plane. Intersecting those half-planes with the
vertex hull gives a region that holds every star center, and candidates
are only tested inside it. The tangents of the polar lower envelope alone
give a second, larger region; when that one collapses to a point which
fails the test, the product is not star-shaped.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .config import DEFAULT_EPS, DEFAULT_TOL, thread_count
from .exceptions import InternalInconsistency, InvalidInput, NotAMember
from .geometry import (
    ConvexBody,
    ConvexPolygon,
    Disk,
    Segment,
    as_point,
    as_polygon,
    body_interior_grid,
    clip_halfplane,
    contains_point,
    contains_points,
    convex_hull,
    hull_bound,
    piece_endpoints,
    piece_tangents,
)
from .geometry import _piece_eval as piece_eval
from .membership import check_star_center, check_star_center_extreme, exclusion_interval, member_many
from .reports import CenterKind, StarReport, StarWitness
from .samplers import BaseSampler, BodySampler
from .segments import product_seg_seg

logger = logging.getLogger(__name__)

BOUNDARY_SAMPLES = 64
# parameters pushed towards both ends of every boundary piece
END_APPROACH = (1e-8, 1e-6, 1e-4, 1e-2)
COLLAPSE = 1e-6
GRID_CANDIDATES = 33 * 33


def _polygon(body: ConvexBody) -> ConvexPolygon:
    if isinstance(body, Disk):
        raise InvalidInput("polygon products need polygonal factors; use the disk module for disks")
    if isinstance(body, Segment):
        return body.to_polygon()
    if not body.vertices:
        raise InvalidInput("empty polygon")
    return body


def _edges(P: ConvexPolygon, eps: float) -> list[Segment]:
    if len(P) == 1:
        return [Segment(P.vertices[0], P.vertices[0])]
    return [e for e in P.edges() if not e.is_degenerate(eps)]


def _boundary_params() -> np.ndarray:
    interior = (np.arange(BOUNDARY_SAMPLES) + 0.5) / BOUNDARY_SAMPLES
    ends = np.array(END_APPROACH)
    return np.concatenate([interior, ends, 1.0 - ends])


@dataclass(frozen=True)
class ExclusionRegion:
    """Convex region that contains every star center of a polygon product.

    ``vertices`` is empty when the half-planes leave nothing.
    """

    vertices: tuple[complex, ...]
    constraints: int
    scale: float

    @property
    def empty(self) -> bool:
        return not self.vertices

    @property
    def diameter(self) -> float:
        if self.empty:
            return 0.0
        vs = np.asarray(self.vertices)
        return float(np.max(np.abs(vs[:, None] - vs[None, :])))

    @property
    def centroid(self) -> complex | None:
        if self.empty:
            return None
        return complex(np.mean(self.vertices))

    def collapsed(self, threshold: float = COLLAPSE) -> bool:
        return self.empty or self.diameter <= threshold * self.scale

    def contains_many(self, zs, slack: float = 0.0) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        if self.empty:
            return np.zeros(zs.shape, dtype=bool)
        if len(self.vertices) < 3:
            return np.abs(zs - self.centroid) <= self.diameter + slack
        return contains_points(ConvexPolygon(self.vertices), zs, slack)

    def probes(self) -> list[complex]:
        if self.empty:
            return []
        return list(self.vertices) + [self.centroid]


@dataclass(frozen=True, eq=False)
class TangentCuts:
    """Tangent half-planes of the product outline, sampled on edge-pair boundary pieces.

    ``normals`` point out of the product. ``inner`` marks the samples on the
    polar lower envelope, where the ray from 0 meets the product first.
    """

    points: np.ndarray
    normals: np.ndarray
    inner: np.ndarray
    hull: ConvexPolygon
    scale: float

    def region(self, mask: np.ndarray | None = None, slack: float = DEFAULT_EPS) -> ExclusionRegion:
        region = list(self.hull.vertices)
        keep = np.ones(len(self.points), dtype=bool) if mask is None else mask
        used = 0
        for q, normal in zip(self.points[keep], self.normals[keep]):
            region = clip_halfplane(region, complex(normal), (normal.conjugate() * q).real + slack * self.scale)
            used += 1
            if not region:
                break
        return ExclusionRegion(tuple(region), used, self.scale)


def tangent_cuts(P1: ConvexBody, P2: ConvexBody, eps: float = DEFAULT_EPS, radial_samples: int = 32) -> TangentCuts:
    """Sample every boundary piece of every edge-pair product and keep the outline points.

    A sample is on the outline when a small step along its normal leaves the
    product on exactly one side.
    """
    P1, P2 = _polygon(P1), _polygon(P2)
    hull = hull_bound(P1, P2)
    scale = max(float(np.max(np.abs(hull.vertices))), eps)
    ts = _boundary_params()

    qs, normals, steps = [], [], []
    for e in _edges(P1, eps):
        for f in _edges(P2, eps):
            if e.is_degenerate(eps) or f.is_degenerate(eps):
                continue
            for piece in product_seg_seg(e, f, eps).boundary:
                tangent = piece_tangents(piece, ts)
                speed = np.abs(tangent)
                keep = speed > eps * scale
                if not keep.any():
                    continue
                q = np.atleast_1d(piece_eval(piece, ts))[keep]
                start, end = piece_endpoints(piece)
                near_end = np.minimum(np.abs(q - start), np.abs(q - end))
                qs.append(q)
                normals.append(-1j * tangent[keep] / speed[keep])
                steps.append(np.minimum(1e-3 * near_end, 1e-6 * scale))
    if not qs:
        logger.debug("no boundary pieces to cut with")
        nothing = np.zeros(0, dtype=complex)
        return TangentCuts(nothing, nothing, np.zeros(0, dtype=bool), hull, scale)

    q, n, step = np.concatenate(qs), np.concatenate(normals), np.concatenate(steps)
    usable = step > eps * eps * scale
    q, n, step = q[usable], n[usable], step[usable]
    plus = member_many(P1, P2, q + step * n, eps * eps)
    minus = member_many(P1, P2, q - step * n, eps * eps)
    outward = np.where(minus & ~plus, n, np.where(plus & ~minus, -n, 0))
    cut = np.flatnonzero(outward != 0)
    q, outward, step = q[cut], outward[cut], step[cut]

    # on the lower envelope nothing of the product lies between 0 and q
    lam = np.linspace(0.0, 1.0, radial_samples + 1)[:-1]
    radial = (q[:, None] * lam[None, :]).ravel()
    below = member_many(P1, P2, radial, eps * eps).reshape(len(q), len(lam)).any(axis=1)
    unit = np.where(np.abs(q) > 0, q / np.where(np.abs(q) > 0, np.abs(q), 1.0), 0)
    below |= member_many(P1, P2, q - 4 * step * unit, eps * eps)
    inner = ~below & (np.abs(q) > eps * scale)
    logger.debug("%d outline samples, %d on the lower envelope", len(q), int(inner.sum()))
    return TangentCuts(q, outward, inner, hull, scale)


def exclusion_region(P1: ConvexBody, P2: ConvexBody, eps: float = DEFAULT_EPS) -> ExclusionRegion:
    """The vertex hull of ``P1 P2`` cut by every sampled outline tangent."""
    return tangent_cuts(P1, P2, eps).region(slack=eps)


def candidate_region(P1: ConvexBody, P2: ConvexBody, eps: float = DEFAULT_EPS) -> ExclusionRegion:
    """The vertex hull cut by the tangents of the polar lower envelope only.

    The hull lies inside |z| <= max |a_i b_j|, so this is the region left by
    the envelope tangents and the modulus bound.
    """
    cuts = tangent_cuts(P1, P2, eps)
    return cuts.region(cuts.inner, slack=eps)


def auto_candidates(P1: ConvexBody, P2: ConvexBody, eps: float = DEFAULT_EPS) -> list[complex]:
    """Edge-pair star centers first, then vertex products, then a grid of the hull."""
    P1, P2 = _polygon(P1), _polygon(P2)
    found: list[complex] = []
    for e in _edges(P1, eps):
        for f in _edges(P2, eps):
            centers = product_seg_seg(e, f, eps).star_centers
            if centers.kind in (CenterKind.POINT, CenterKind.SEGMENT, CenterKind.CONVEX):
                found.append(centers.representative())
                found.extend(centers.vertices())
    found.extend(a * b for a in P1.vertices for b in P2.vertices)
    found.extend(body_interior_grid(hull_bound(P1, P2), GRID_CANDIDATES))

    seen, unique = set(), []
    for z in found:
        key = (round(z.real, 12), round(z.imag, 12))
        if key not in seen:
            seen.add(key)
            unique.append(complex(z))
    return unique


def _first_center(P1, P2, candidates, seg_samples, tol, threads):
    """First candidate passing the extreme-point test, in candidate order."""
    failures: list[tuple[complex, StarWitness]] = []

    def check(p):
        try:
            return check_star_center_extreme(P1, P2, p, seg_samples, tol)
        except NotAMember:
            return None

    tested = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(candidates), threads):
            batch = candidates[start:start + threads]
            for p, result in zip(batch, pool.map(check, batch)):
                if result is None:
                    continue
                tested += 1
                if result.ok:
                    return p, tested, failures
                failures.append((p, result.witness))
    return None, tested, failures




def _collapsed_point(P1, P2, region: ExclusionRegion, collapse: float, tol: float) -> complex:
    """A product point standing for a collapsed region, its centroid when that is a member."""
    near = [a * b for a in P1.vertices for b in P2.vertices]
    near = [z for z in near if abs(z - region.centroid) <= collapse * region.scale]
    pool = [region.centroid, *region.vertices, *near]
    members = member_many(P1, P2, pool, tol)
    return next((z for z, ok in zip(pool, members) if ok), region.centroid)


def _strongest_witness(P1, P2, p, samples, tol) -> StarWitness | None:
    """Vertex product whose segment from ``p`` leaves the product over the longest stretch."""
    best, best_len = None, 0.0
    for a in P1.vertices:
        for b in P2.vertices:
            interval = exclusion_interval(P1, P2, p, a * b, samples, tol)
            if interval is None:
                continue
            lo, hi = interval
            if hi - lo > best_len:
                best, best_len = (a, b, lo), hi - lo
    if best is None:
        return None
    a, b, lo = best
    return StarWitness(a, b, lo, p + lo * (a * b - p))


def check_star_polygon_product(
    P1: ConvexBody,
    P2: ConvexBody,
    candidates: Sequence[complex] | None = None,
    seg_samples: int = 128,
    collapse: float = COLLAPSE,
    threads: int | None = None,
    tol: float = DEFAULT_TOL,
    eps: float = DEFAULT_EPS,
) -> StarReport:
    """Decide whether ``P1 P2`` is star-shaped.

    Explicit candidates are all tested; automatic ones only inside the
    exclusion region. NOT_STAR_SHAPED is returned only when the region left
    by the lower-envelope tangents is empty or has collapsed to a point that
    fails.
    """
    P1, P2 = _polygon(P1), _polygon(P2)
    if candidates is not None and len(candidates) == 0:
        raise InvalidInput("empty candidate list")
    seg_samples = max(seg_samples, 128)
    threads = threads or thread_count()

    cuts = tangent_cuts(P1, P2, eps)
    region = cuts.region(slack=eps)
    analytic = cuts.region(cuts.inner, slack=eps)
    if candidates is not None:
        pool = [as_point(z) for z in candidates]
    else:
        pool = auto_candidates(P1, P2, eps)
        if not region.empty:
            inside = region.contains_many(pool, eps * region.scale)
            pool = [z for z, ok in zip(pool, inside) if ok]
    pool = pool + analytic.probes() + region.probes()
    if pool:
        members = member_many(P1, P2, pool, tol)
        pool = [z for z, ok in zip(pool, members) if ok]
    logger.info(
        "testing %d candidates; exclusion region diameter %.3g, envelope region diameter %.3g",
        len(pool), region.diameter, analytic.diameter,
    )

    center, tested, failures = _first_center(P1, P2, pool, seg_samples, tol, threads)
    if center is not None:
        logger.info("polygon product star center %s after %d candidates", center, tested)
        return StarReport.star(center, candidates_tested=tested)

    if not analytic.collapsed(collapse):
        note = f"no candidate passed; envelope region diameter {analytic.diameter:.3g}"
        logger.info(note)
        return StarReport.unknown(candidates_tested=tested, note=note)

    if analytic.empty:
        p = failures[0][0] if failures else P1.vertices[0] * P2.vertices[0]
        note = "envelope region empty"
    else:
        p = _collapsed_point(P1, P2, analytic, collapse, tol)
        note = f"envelope region collapsed to {p}"
    try:
        check = check_star_center_extreme(P1, P2, p, seg_samples, tol)
    except NotAMember:
        check = None
    if check is not None and check.ok:
        return StarReport.star(p, candidates_tested=tested + 1)
    witness = None
    try:
        witness = _strongest_witness(P1, P2, p, 4 * seg_samples, tol)
    except NotAMember:
        pass
    if witness is None and check is not None:
        witness = check.witness
    if witness is None and failures:
        witness = min(failures, key=lambda fw: abs(fw[0] - p))[1]
    logger.info("polygon product is not star-shaped: %s", note)
    return StarReport.not_star(witness, candidates_tested=tested + 1, note=note)


def polar_envelope(
    P1: ConvexBody,
    P2: ConvexBody,
    thetas,
    radial_samples: int = 2000,
    refine_steps: int = 40,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, np.ndarray]:
    """Nearest and farthest product points along rays from 0.

    Both arrays are NaN where a ray misses the product.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    reach = float(np.max(np.abs(hull_bound(P1, P2).vertices))) * (1 + 1e-9)
    rs = np.linspace(0.0, reach, radial_samples)
    dirs = np.exp(1j * thetas)
    inside = member_many(P1, P2, (rs[None, :] * dirs[:, None]).ravel(), tol).reshape(len(thetas), radial_samples)

    rho0 = np.full(len(thetas), np.nan)
    rho1 = np.full(len(thetas), np.nan)
    hit = inside.any(axis=1)
    if not hit.any():
        return rho0, rho1
    rows = np.flatnonzero(hit)
    first = np.argmax(inside[rows], axis=1)
    last = radial_samples - 1 - np.argmax(inside[rows, ::-1], axis=1)

    def bisect(lo, hi, inside_at_lo):
        d = dirs[rows]
        for _ in range(refine_steps):
            mid = 0.5 * (lo + hi)
            m = member_many(P1, P2, mid * d, tol)
            move_lo = m == inside_at_lo
            lo = np.where(move_lo, mid, lo)
            hi = np.where(move_lo, hi, mid)
        return lo, hi

    lo0 = rs[np.maximum(first - 1, 0)]
    _, hi0 = bisect(lo0, rs[first], False)
    rho0[rows] = np.where(first == 0, 0.0, hi0)
    hi1 = rs[np.minimum(last + 1, radial_samples - 1)]
    lo1, _ = bisect(rs[last], hi1, True)
    rho1[rows] = np.where(last == radial_samples - 1, rs[last], lo1)
    return rho0, rho1


def star_center_symmetric_triangle(
    r: float, a, seg_samples: int = 128, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> complex:
    """Center ``|a|^2`` for the square of the triangle K(r, a, conj(a)), r real."""
    a = as_point(a)
    if isinstance(r, complex) and r.imag != 0:
        raise InvalidInput("r must be real")
    if abs(a.imag) <= eps * max(abs(a), 1.0):
        raise InvalidInput(f"{a} is real; the triangle collapses to a segment")
    T = convex_hull([float(r), a, a.conjugate()])
    center = complex(abs(a) ** 2)
    check = check_star_center_extreme(T, T, center, seg_samples, tol)
    if not check.ok:
        raise InternalInconsistency(f"{center} fails for the triangle ({r}, {a}) at {check.witness.point}")
    logger.debug("symmetric triangle center %s", center)
    return center


def zero_center_product(K1: BaseSampler | ConvexBody, K2: ConvexBody, samples: int = 400, tol: float = DEFAULT_TOL) -> complex:
    """0 is a star center of K1 K2 whenever K1 is star-shaped about 0."""
    sampler = K1 if isinstance(K1, BaseSampler) else BodySampler(K1, center=0)
    if not sampler.contains_many([0], tol)[0]:
        raise InvalidInput("0 is not in the first factor")
    if sampler.center is not None and abs(sampler.center) > tol:
        raise InvalidInput(f"the first factor is star-shaped about {sampler.center}, not 0")
    check = sampler.check_product_center(K2, 0, samples=samples, tol=tol)
    if not check.ok:
        logger.warning("0 failed the spot check at %s; is the first factor star-shaped about 0?", check.witness.point)
    return 0j


def _rest_points(factors: Sequence[ConvexBody]) -> np.ndarray:
    polys = [np.asarray(as_polygon(f, 64, circumscribed=True).vertices) for f in factors]
    return reduce(lambda acc, vs: np.asarray(convex_hull(np.outer(acc, vs).ravel()).vertices), polys[1:], polys[0])


def _disk_normalised_center(
    factors: Sequence[ConvexBody], disk_at: int, samples: int, tol: float, eps: float
) -> StarReport | None:
    disk = factors[disk_at]
    rest = [f for k, f in enumerate(factors) if k != disk_at]
    c, r = disk.center, disk.radius / abs(disk.center)
    pts = _rest_points(rest)
    centroid = complex(np.mean(pts))
    nearest = complex(pts[np.argmin(np.abs(pts))])
    mus = [1 + 0j] + [1 / z for z in (centroid, nearest) if abs(z) > eps]

    for mu in mus:
        scaled = mu * pts
        if np.all(np.abs(scaled - 1) <= r + tol):
            center, note = c * (1 - r * r) / mu, "disk subset"
        elif np.all(scaled.real >= 1 - tol):
            center, note = c / mu, "disk half-plane"
        else:
            continue
        if len(factors) == 2:
            check = check_star_center(disk, rest[0], center, samples, tol=tol)
            if not check.ok:
                raise InternalInconsistency(f"{note} center {center} fails at {check.witness.point}")
        logger.info("multi-product center %s (%s, disk %d, mu=%s)", center, note, disk_at, mu)
        return StarReport.star(center, note=note)
    return None


def multi_product_star_center(
    factors: Sequence[ConvexBody],
    samples: int = 720,
    tol: float = DEFAULT_TOL,
    eps: float = DEFAULT_EPS,
) -> StarReport:
    """Star center of a product of several convex factors.

    0 works when a factor holds 0. Otherwise each disk factor D(c, rho) in
    turn is written as c D(1, r) and the rest is rescaled to fit D(1, r) or
    the half-plane Re z >= 1.
    """
    if len(factors) < 2:
        raise InvalidInput("need at least two factors")
    if any(contains_point(f, 0, eps) for f in factors):
        logger.info("a factor contains 0; 0 is a star center")
        return StarReport.star(0j, note="zero factor")

    disks = [k for k, f in enumerate(factors) if isinstance(f, Disk)]
    if not disks:
        if len(factors) == 2:
            return check_star_polygon_product(factors[0], factors[1], tol=tol, eps=eps)
        return StarReport.unknown(note="no disk factor")

    for disk_at in disks:
        report = _disk_normalised_center(factors, disk_at, samples, tol, eps)
        if report is not None:
            return report
    return StarReport.unknown(note="no rescaling of the remaining factors fits a disk")
