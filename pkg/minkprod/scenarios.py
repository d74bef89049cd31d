"""Registered reproduction scenarios run by ``minkprod verify``.

Each scenario measures a closed-form claim against the checkers and
returns the measured and expected values side by side.
"""
import cmath
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .disks import segment_disk_slack, shrink_gap, star_center_disk_subset, star_center_segment_disk
from .config import DEFAULT_TOL
from .exceptions import InvalidInput
from .geometry import Disk, Segment, convex_hull, piece_endpoints
from .membership import check_star_center, member_exact, member_many, raster_product
from .numrange import ComplexMatrix, diagonal_matrix, numerical_range_boundary, numerical_range_points
from .polygons import candidate_region, check_star_polygon_product, star_center_symmetric_triangle
from .reports import Verdict
from .samplers import BodySampler, PointSetSampler, SegmentUnionSampler
from .segments import SegmentCase, product_seg_seg, seg_square_region

logger = logging.getLogger(__name__)

ALPHA1 = cmath.exp(1j * math.pi / 3)
ALPHA2 = 0.95 * cmath.exp(1j * math.pi / 4)


@dataclass(frozen=True)
class Check:
    label: str
    measured: object
    expected: object
    ok: bool


@dataclass
class ScenarioResult:
    name: str
    tol: float = DEFAULT_TOL
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def add(self, label: str, measured, expected, ok) -> None:
        self.checks.append(Check(label, measured, expected, bool(ok)))


SCENARIOS: dict[str, Callable[[ScenarioResult], None]] = {}
# short names accepted by run_scenario
ALIASES = {
    "ex3.1": "triangle-not-star",
    "ex3.2": "quad-not-star",
    "thm2.4b-centers": "segment-overlap-centers",
    "fig10": "ring-hole",
}


def scenario(name: str):
    def register(fn):
        SCENARIOS[name] = fn
        return fn

    return register


def run_scenario(name: str, tol: float = DEFAULT_TOL) -> ScenarioResult:
    name = ALIASES.get(name, name)
    try:
        fn = SCENARIOS[name]
    except KeyError:
        known = [*SCENARIOS, *ALIASES]
        raise InvalidInput(f"unknown scenario {name!r}; known: {', '.join(known)}") from None
    result = ScenarioResult(name, tol=tol)
    fn(result)
    logger.info("scenario %s: %s", name, "pass" if result.passed else "FAIL")
    return result


def _canonical(lo: float, hi: float) -> Segment:
    return Segment(complex(1, lo), complex(1, hi))


@scenario("segment-quad")
def _segment_quad(result: ScenarioResult) -> None:
    region = product_seg_seg(_canonical(-1, 0), _canonical(1, 2))
    result.add("case", region.case.value, SegmentCase.QUAD.value, region.case is SegmentCase.QUAD)
    corners = [complex(1, a) * complex(1, b) for a in (-1, 0) for b in (1, 2)]
    ok = all(region.contains(z) for z in corners)
    result.add("vertex products in region", ok, True, ok)


@scenario("segment-overlap-centers")
def _segment_overlap(result: ScenarioResult) -> None:
    s1, s2 = _canonical(-1, 1), _canonical(0, 2)
    region = product_seg_seg(s1, s2)
    result.add("case", region.case.value, SegmentCase.OVERLAP.value, region.case is SegmentCase.OVERLAP)
    arcs = region.parabolic_arcs()
    if not arcs:
        result.add("parabolic arc", None, "present", False)
        return
    start, end = piece_endpoints(arcs[0])
    result.add("arc start", start, 1 + 0j, abs(start - 1) <= 1e-9)
    result.add("arc end", end, 2j, abs(end - 2j) <= 1e-9)
    for v in region.star_centers.vertices():
        check = check_star_center(s1, s2, v, 720, 64, result.tol)
        result.add(f"center {v:.6g} verified", check.ok, True, check.ok)


@scenario("segment-nested-center")
def _segment_nested(result: ScenarioResult) -> None:
    s1, s2 = _canonical(-2, 2), _canonical(-1, 1)
    region = product_seg_seg(s1, s2)
    result.add("case", region.case.value, SegmentCase.NESTED.value, region.case is SegmentCase.NESTED)
    center = region.star_centers.representative()
    result.add("center", center, 2 + 0j, center is not None and abs(center - 2) <= 1e-9)
    check = check_star_center(s1, s2, 2, 720, 64, result.tol)
    result.add("center verified", check.ok, True, check.ok)


@scenario("square-region")
def _square_region(result: ScenarioResult) -> None:
    s = _canonical(-1, 1)
    region = seg_square_region(-1, 1)
    grid = raster_product(s, s, n=512, m=512)
    rng = np.random.default_rng(0)
    x0, x1, y0, y1 = grid.bbox
    zs = rng.uniform(x0, x1, 100_000) + 1j * rng.uniform(y0, y1, 100_000)
    rate = grid.agreement(region.contains_many(zs), zs)
    result.add("oracle agreement", round(rate, 5), ">= 0.999", rate >= 0.999)


@scenario("triangle-not-star")
def _triangle_not_star(result: ScenarioResult) -> None:
    T = convex_hull([ALPHA1, ALPHA1.conjugate(), ALPHA2])
    for t in (0.1, 0.2, 0.3):
        z = (1 - t) + t * 0.9025j
        inside = member_exact(T, T, z, result.tol)
        result.add(f"member at t={t}", inside, False, not inside)
    region = candidate_region(T, T)
    near_one = not region.empty and abs(region.centroid - 1) <= 1e-6
    result.add("envelope region", region.centroid, 1 + 0j, region.collapsed() and near_one)
    report = check_star_polygon_product(T, T, tol=result.tol)
    result.add("verdict", report.verdict.value, Verdict.NOT_STAR_SHAPED.value, report.verdict is Verdict.NOT_STAR_SHAPED)
    if report.witness is not None:
        w = report.witness
        result.add("witness", w.point, "outside", not member_exact(T, T, w.point, result.tol))
        on_chord = abs(w.a * w.b - ALPHA2**2) <= 1e-9
        result.add("witness chord end", w.a * w.b, ALPHA2**2, on_chord)


@scenario("quad-not-star")
def _quad_not_star(result: ScenarioResult) -> None:
    Q = convex_hull([ALPHA1, ALPHA1.conjugate(), ALPHA2, ALPHA2.conjugate()])
    report = check_star_polygon_product(Q, Q, tol=result.tol)
    result.add("verdict", report.verdict.value, Verdict.NOT_STAR_SHAPED.value, report.verdict is Verdict.NOT_STAR_SHAPED)
    rng = np.random.default_rng(1)
    zs = rng.uniform(-0.3, 1.0, 10_000) + 1j * rng.uniform(-1.0, 1.0, 10_000)
    same = np.array_equal(member_many(Q, Q, zs), member_many(Q, Q, zs.conjugate()))
    result.add("conjugate symmetry", same, True, same)


@scenario("symmetric-triangle")
def _symmetric_triangle(result: ScenarioResult) -> None:
    rng = np.random.default_rng(2)
    passed = 0
    for _ in range(20):
        r = rng.uniform(0.5, 2.0)
        a = rng.uniform(0.5, 1.5) * cmath.exp(1j * rng.uniform(0.2, 1.2))
        center = star_center_symmetric_triangle(r, a, tol=result.tol)
        T = convex_hull([r, a, a.conjugate()])
        passed += check_star_center(T, T, center, 720, 64, 1e-7).ok
    result.add("trials verified", passed, 20, passed == 20)


@scenario("segment-disk")
def _segment_disk(result: ScenarioResult) -> None:
    for b, r in ((1 + 2j, 0.5), (2, 1.0), (1 + 0.1j, 0.25)):
        cert = star_center_segment_disk(b, r)
        result.add(f"center 1 for b={b}, r={r}", cert.verified, True, cert.verified)
        s, t = np.meshgrid(np.linspace(0, 1, 100), np.linspace(0, 1, 100))
        c = 1 + s.ravel()[:, None] * (b - 1)
        d = 1 + r * np.exp(2j * np.pi * np.arange(16) / 16)[None, :]
        slack = segment_disk_slack(c, d, t.ravel()[:, None], r)
        result.add(f"inequality slack b={b}, r={r}", float(slack.min()), ">= -1e-12", slack.min() >= -1e-12)


@scenario("disk-subset")
def _disk_subset(result: ScenarioResult) -> None:
    rng = np.random.default_rng(3)
    for r in (0.1, 0.5, 1.0):
        b = 1 + r * np.sqrt(rng.uniform(0, 1, 10_000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10_000))
        worst = float(shrink_gap(b, r).max())
        result.add(f"identity r={r}", worst, "<= 1e-12", worst <= 1e-12)
    verified = 0
    for _ in range(10):
        k = int(rng.integers(1, 6))
        pts = 1 + 0.5 * np.sqrt(rng.uniform(0, 1, k)) * np.exp(2j * np.pi * rng.uniform(0, 1, k))
        verified += star_center_disk_subset(1, 0.5, PointSetSampler(pts), samples=400).verified
    result.add("subset certificates", verified, 10, verified == 10)


@scenario("ring-hole")
def _ring_hole(result: ScenarioResult) -> None:
    w = 2 * cmath.exp(11j * math.pi / 12)
    disk = Disk(1, 0.5)
    spokes = SegmentUnionSampler.spokes(1, [w, w.conjugate()])
    ring = spokes.raster_with(disk, n=1024, m=512)
    result.add("holes, star-shaped factor", ring.hole_count(), ">= 1", ring.hole_count() >= 1)
    for z in ring.hole_points()[:1]:
        outside = not spokes.product_member_many(disk, [z], result.tol)[0]
        result.add("hole point outside product", z, "outside", outside)
    convex = BodySampler(convex_hull([1, w, w.conjugate()])).raster_with(disk, n=1024, m=512)
    result.add("holes, convex factor", convex.hole_count(), 0, convex.hole_count() == 0)


@scenario("numrange-disk")
def _numrange_disk(result: ScenarioResult) -> None:
    pts = numerical_range_points(ComplexMatrix(np.array([[0, 1], [0, 0]])), 360)
    spread = float(np.max(np.abs(np.abs(pts) - 0.5)))
    result.add("nilpotent radius error", spread, "<= 1e-8", len(pts) == 360 and spread <= 1e-8)
    values = np.array([ALPHA1, ALPHA1.conjugate(), ALPHA2])
    P = numerical_range_boundary(diagonal_matrix(values), 90)
    err = max(float(np.min(np.abs(values - v))) for v in P.vertices)
    result.add("diagonal hull error", err, "<= 1e-9", len(P) == 3 and err <= 1e-9)
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(10):
        A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        base = np.array(numerical_range_points(ComplexMatrix(A), 60))
        phi = rng.uniform(0, 2 * math.pi)
        c = complex(*rng.normal(size=2))
        rotated = numerical_range_points(ComplexMatrix(cmath.exp(1j * phi) * A), 60, offset=phi)
        shifted = numerical_range_points(ComplexMatrix(A + c * np.eye(4)), 60)
        worst = max(worst, float(np.max(np.abs(rotated - cmath.exp(1j * phi) * base))))
        worst = max(worst, float(np.max(np.abs(shifted - (base + c)))))
    result.add("equivariance error", worst, "<= 1e-8", worst <= 1e-8)
