import math

import numpy as np
import pytest

from minkprod import InvalidInput, NotAMember
from minkprod.geometry import ConvexPolygon, Disk, Segment, contains_points
from minkprod.membership import raster_product
from minkprod.samplers import BodySampler, PointSetSampler, SegmentUnionSampler


def test_point_set_product_membership():
    S = PointSetSampler([1, 2])
    zs = np.array([1.5, 3, 2.5, 0.2])
    assert S.product_member_many(Disk(1, 0.5), zs, 1e-9).tolist() == [True, True, True, False]


def test_spokes_contain_their_segments_only():
    S = SegmentUnionSampler.spokes(0, [1, 1j])
    assert S.center == 0
    assert S.contains_many([0.5, 0.5j, 0.5 + 0.5j], 1e-9).tolist() == [True, True, False]


def test_min_modulus_is_exact_distance():
    S = SegmentUnionSampler([Segment(1, 1j), Segment(3, 4)])
    assert S.min_modulus() == pytest.approx(1 / math.sqrt(2))
    assert PointSetSampler([2j, -3]).min_modulus() == pytest.approx(2)


def test_body_sampler_points_stay_in_body():
    body = ConvexPolygon((1, 2 + 0.5j, 1 + 1.5j))
    pts = BodySampler(body).sample(100)
    assert len(pts) > 50
    assert contains_points(body, pts, 1e-9).all()


def test_empty_samplers_raise():
    with pytest.raises(InvalidInput):
        PointSetSampler([])
    with pytest.raises(InvalidInput):
        SegmentUnionSampler([])


def test_star_about_zero_times_anything():
    S = SegmentUnionSampler.spokes(0, [1, 1j])
    check = S.check_product_center(Disk(2, 0.1), 0, samples=200)
    assert check.ok
    with pytest.raises(NotAMember):
        S.check_product_center(Disk(2, 0.1), 10)


def test_raster_with_single_body_matches_product_raster():
    body, disk = ConvexPolygon((1, 1 + 1j, 2)), Disk(1, 0.5)
    grid = BodySampler(body).raster_with(disk, n=128, m=64)
    assert np.array_equal(grid.occupancy, raster_product(body, disk, n=128, m=64).occupancy)


def test_segment_body_sampler_stays_on_segment():
    s = Segment(1 - 2j, 1 + 2j)
    pts = BodySampler(s).sample(40)
    assert len(pts) >= 20
    assert contains_points(s, pts, 1e-12).all()
    assert BodySampler(s).contains_many([1, 2], 1e-9).tolist() == [True, False]
