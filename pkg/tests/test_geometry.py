import math

import numpy as np
import pytest

from minkprod import InvalidInput
from minkprod.geometry import (
    CircArc,
    ConvexPolygon,
    Disk,
    LineSeg,
    ParaArc,
    Segment,
    as_point,
    body_boundary,
    body_extreme_points,
    body_interior_grid,
    chain_is_closed,
    clip_halfplane,
    contains_point,
    contains_points,
    convex_hull,
    convex_intersection_point,
    distance_to_body,
    eval_boundary_piece,
    hull_bound,
    polygon_chain,
)


def test_convex_hull_drops_interior_point():
    hull = convex_hull([0, 1, 1j, 0.2 + 0.2j])
    assert hull.vertices == (0j, 1 + 0j, 1j)


def test_convex_hull_singleton_and_collinear():
    assert convex_hull([1 + 1j]).vertices == (1 + 1j,)
    assert convex_hull([1, 2, 3]).vertices == (1 + 0j, 3 + 0j)


def test_convex_hull_empty_raises():
    with pytest.raises(InvalidInput):
        convex_hull([])


def test_convex_hull_drops_repeats_far_apart_in_sort_order():
    square = [0, 1, 1 + 1j, 1j]
    filler = list(np.linspace(0.1, 0.9, 40) + 0.5j)
    pts = square + filler + [z + 1e-13 for z in square] + filler + square
    hull = convex_hull(pts)
    assert len(hull) == 4
    assert set(np.round(hull.vertices, 9)) == {0j, 1 + 0j, 1 + 1j, 1j}


def test_segment_extreme_points_are_its_ends():
    s = Segment(1 - 2j, 1 + 2j)
    assert body_extreme_points(s).tolist() == [1 - 2j, 1 + 2j]
    grid = body_interior_grid(s, 25)
    assert len(grid) >= 2
    assert contains_points(s, grid, 1e-12).all()


def test_convex_hull_is_idempotent_and_ccw():
    rng = np.random.default_rng(7)
    pts = rng.normal(size=50) + 1j * rng.normal(size=50)
    hull = convex_hull(pts)
    assert convex_hull(hull.vertices) == hull
    assert hull.area() > 0


def test_polygon_normalises_on_construction():
    poly = ConvexPolygon((1j, 0, 0.5, 1))
    assert poly.vertices == (0j, 1 + 0j, 1j)


def test_as_point_rejects_non_finite():
    with pytest.raises(InvalidInput):
        as_point(complex(math.nan, 0))
    with pytest.raises(InvalidInput):
        Segment(0, complex(math.inf, 1))


def test_disk_rejects_negative_radius():
    with pytest.raises(InvalidInput):
        Disk(0, -1)


def test_contains_point_examples():
    assert contains_point(Disk(1, 0.5), 1.4, 1e-9)
    assert not contains_point(ConvexPolygon((0, 1, 1j)), 0.6 + 0.6j, 1e-9)
    assert contains_point(Segment(1 - 1j, 1 + 1j), 1, 1e-9)


def test_contains_point_negative_tol_raises():
    with pytest.raises(InvalidInput):
        contains_point(Disk(0, 1), 0, -1.0)


def test_contains_points_matches_distance():
    rng = np.random.default_rng(3)
    poly = ConvexPolygon((0, 2, 2 + 1j, 0.5 + 2j))
    zs = rng.uniform(-1, 3, 5000) + 1j * rng.uniform(-1, 3, 5000)
    tol = 1e-3
    inside = contains_points(poly, zs, tol)
    assert np.array_equal(inside, distance_to_body(poly, zs) <= tol)


def test_segment_polygon_conversion_is_lossless():
    s = Segment(1 - 1j, 2 + 3j)
    assert s.to_polygon().to_segment() == s
    with pytest.raises(InvalidInput):
        ConvexPolygon((0, 1, 1j)).to_segment()


def test_eval_boundary_piece_examples():
    assert eval_boundary_piece(ParaArc(1, 0, 1), 1.0) == pytest.approx(2j)
    assert eval_boundary_piece(ParaArc(1, -1, 1), 0.5) == pytest.approx(1)
    assert eval_boundary_piece(LineSeg.between(0, 2), 0.25) == pytest.approx(0.5)
    arc = CircArc(0, 2, 0.0, math.pi)
    assert eval_boundary_piece(arc, 0.5) == pytest.approx(2j)


def test_eval_boundary_piece_out_of_range():
    with pytest.raises(InvalidInput):
        eval_boundary_piece(LineSeg.between(0, 1), 1.5)


def test_para_arc_points_lie_on_parabola():
    omega = 0.3 - 1.2j
    arc = ParaArc(omega, -1.5, 2.0)
    for t in np.linspace(0, 1, 41):
        w = eval_boundary_piece(arc, t) / omega
        assert w.real == pytest.approx(1 - w.imag ** 2 / 4, abs=1e-9)


def test_para_arc_requires_ordered_range():
    with pytest.raises(InvalidInput):
        ParaArc(1, 1, 0)


def test_polygon_chain_closes():
    assert chain_is_closed(polygon_chain(ConvexPolygon((0, 1, 1 + 1j, 1j))))


def test_body_boundary_includes_vertices():
    poly = ConvexPolygon((0, 3, 1j))
    pts = body_boundary(poly, 30)
    for v in poly.vertices:
        assert np.min(np.abs(pts - v)) < 1e-12


def test_hull_bound_contains_samples_of_product():
    k1 = ConvexPolygon((1, 2, 1 + 1j))
    k2 = Disk(1 + 0.5j, 0.3)
    bound = hull_bound(k1, k2)
    a = body_boundary(k1, 60)
    b = body_boundary(k2, 60)
    assert contains_points(bound, np.outer(a, b).ravel(), 1e-9).all()


def test_clip_halfplane_cuts_square():
    square = [0, 1, 1 + 1j, 1j]
    clipped = clip_halfplane(square, 1, 0.5)
    assert max(z.real for z in clipped) == pytest.approx(0.5)
    assert clip_halfplane(square, 1, -1) == []


def test_convex_intersection_point():
    assert convex_intersection_point(Disk(0, 1), Disk(3, 1)) is None
    z = convex_intersection_point(Disk(0, 1), Disk(1.5, 1))
    assert abs(z) <= 1 + 1e-9 and abs(z - 1.5) <= 1 + 1e-9
    tri = ConvexPolygon((0, 2, 1 + 2j))
    z = convex_intersection_point(Segment(-1 + 1j, 3 + 1j), tri)
    assert contains_point(tri, z, 1e-9)
    assert convex_intersection_point(Segment(5, 6), tri) is None
    z = convex_intersection_point(Segment(0, 2j), Segment(-1 + 1j, 1 + 1j))
    assert z == pytest.approx(1j)


def test_disk_polygon_circumscribes():
    d = Disk(1 + 1j, 2)
    poly = d.polygon(32, circumscribed=True)
    pts = d.center + d.radius * np.exp(1j * np.linspace(0, 2 * np.pi, 500))
    assert contains_points(poly, pts, 1e-9).all()
    assert abs(d.boundary_point(math.pi / 2) - (1 + 3j)) < 1e-12
