import cmath
import math

import numpy as np
import pytest

from minkprod import InvalidInput
from minkprod.disks import (
    DiskTheorem,
    disk_times_point,
    segment_disk_slack,
    shrink_gap,
    star_center_disk_subset,
    star_center_segment_disk,
    star_shaped_times_disk,
)
from minkprod.geometry import ConvexPolygon, Disk
from minkprod.samplers import BodySampler, PointSetSampler, SegmentUnionSampler


def test_disk_times_point_examples():
    d = disk_times_point(Disk(1, 0.5), 1.5)
    assert d == Disk(1.5, 0.75)
    assert abs(abs(0.75 - d.center) - d.radius) < 1e-12
    assert disk_times_point(Disk(0, 1), 1j) == Disk(0, 1)
    for r in (0.1, 0.5, 1.0):
        unit = disk_times_point(Disk(1, r), 1)
        assert abs((1 - r * r) - unit.center) <= unit.radius


def test_shrink_gap_identity_and_sign():
    rng = np.random.default_rng(0)
    for r in (0.2, 0.5, 0.9, 1.0):
        b = 1 + r * np.sqrt(rng.uniform(0, 1, 10_000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10_000))
        direct = np.abs(b - (1 - r * r)) ** 2 - np.abs(b) ** 2 * r * r
        assert np.allclose(shrink_gap(b, r), direct, atol=1e-12)
        assert np.all(shrink_gap(b, r) <= 1e-12)


def test_subset_center_single_point_set():
    cert = star_center_disk_subset(1, 0.5, PointSetSampler([1.5]))
    assert cert.center_claimed == pytest.approx(0.75)
    assert cert.theorem is DiskTheorem.SUBSET
    assert cert.r_canonical == pytest.approx(0.5)
    assert cert.verified


def test_subset_center_boundary_samples():
    boundary = [Disk(1, 0.5).boundary_point(2 * math.pi * k / 24) for k in range(24)]
    cert = star_center_disk_subset(1, 0.5, PointSetSampler(boundary), samples=400)
    assert cert.verified
    assert cert.center_claimed == pytest.approx(0.75)


def test_subset_center_scales_with_mu():
    cert = star_center_disk_subset(2j, 1, BodySampler(Disk(2j, 1)), samples=200)
    assert cert.r_canonical == pytest.approx(0.5)
    assert cert.center_claimed == pytest.approx(-3)
    assert cert.verified


def test_subset_center_rejects_disk_around_zero():
    with pytest.raises(InvalidInput):
        star_center_disk_subset(0.5, 0.5, PointSetSampler([0.5]))


def test_segment_disk_slack_is_non_negative():
    rng = np.random.default_rng(1)
    c = 1 + rng.uniform(0, 3, 5000) + 1j * rng.uniform(-3, 3, 5000)
    d = 1 + 0.7 * np.sqrt(rng.uniform(0, 1, 5000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 5000))
    t = rng.uniform(0, 1, 5000)
    assert np.all(segment_disk_slack(c, d, t, 0.7) >= -1e-12)


@pytest.mark.parametrize("b,r", [(1, 0.3), (1 + 2j, 0.5), (2, 1.0)])
def test_segment_disk_center_is_one(b, r):
    cert = star_center_segment_disk(b, r)
    assert cert.center_claimed == 1
    assert cert.theorem is DiskTheorem.SEGMENT
    assert cert.verified


@pytest.mark.parametrize("b,r", [(1 + 1j, 0.0), (1 + 1j, 1.5), (0.5 + 1j, 0.5)])
def test_segment_disk_rejects_bad_input(b, r):
    with pytest.raises(InvalidInput):
        star_center_segment_disk(b, r)


def test_star_set_convex_factor():
    S = BodySampler(ConvexPolygon((1, 1 + 1j, 2)), center=1)
    cert = star_shaped_times_disk(S, 1, 0.5)
    assert cert.verified
    assert cert.center_claimed == 1
    assert cert.holes is None


def test_star_set_singleton_gives_the_disk():
    cert = star_shaped_times_disk(PointSetSampler([1], center=1), 2 + 1j, 0.5)
    assert cert.verified
    assert cert.center_claimed == pytest.approx(2 + 1j)
    assert cert.r_canonical == pytest.approx(0.5 / abs(2 + 1j))


def test_star_set_ring_is_refused_with_hole(caplog):
    w = 2 * cmath.exp(11j * math.pi / 12)
    S = SegmentUnionSampler.spokes(1, [w, w.conjugate()])
    cert = star_shaped_times_disk(S, 1, 0.5, samples=2000)
    assert not cert.verified
    assert cert.witness is not None
    assert cert.holes >= 1
    assert "minimal modulus" in caplog.text


def test_star_set_needs_center_and_normalisable_disk():
    with pytest.raises(InvalidInput):
        star_shaped_times_disk(PointSetSampler([1]), 1, 0.5)
    with pytest.raises(InvalidInput):
        star_shaped_times_disk(PointSetSampler([1], center=1), 0.2, 0.5)
