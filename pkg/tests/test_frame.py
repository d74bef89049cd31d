import cmath
import math

import numpy as np
import pytest

from minkprod import DegenerateFrame, InvalidInput
from minkprod.frame import canonicalize_segment, collinear_with_origin, rotate_support
from minkprod.geometry import Segment


def test_canonicalize_examples():
    f = canonicalize_segment(Segment(1j, 1 + 1j))
    assert f.omega == pytest.approx(1j)
    assert (f.a_lo, f.a_hi) == pytest.approx((-1.0, 0.0))

    f = canonicalize_segment(Segment(1 - 1j, 1 + 1j))
    assert f.omega == pytest.approx(1)
    assert (f.a_lo, f.a_hi) == pytest.approx((-1.0, 1.0))


def test_canonicalize_line_through_origin_raises():
    with pytest.raises(DegenerateFrame):
        canonicalize_segment(Segment(1, 2))
    assert collinear_with_origin(Segment(-1 - 1j, 3 + 3j))


def test_canonicalize_zero_length_raises():
    with pytest.raises(InvalidInput):
        canonicalize_segment(Segment(1 + 1j, 1 + 1j))


def test_canonicalize_round_trip_and_foot_of_perpendicular():
    rng = np.random.default_rng(11)
    for _ in range(50):
        p, q = rng.normal(size=2) + 1j * rng.normal(size=2)
        s = Segment(p, q)
        f = canonicalize_segment(s)
        assert f.a_lo <= f.a_hi
        ends = f.endpoints()
        assert sorted([abs(ends[0] - p), abs(ends[1] - p)])[0] < 1e-9
        assert sorted([abs(ends[0] - q), abs(ends[1] - q)])[0] < 1e-9
        line = p + np.linspace(-50, 50, 200001) * (q - p)
        assert abs(f.omega) <= np.min(np.abs(line)) + 1e-6


def test_rotate_support_puts_points_on_unit_line():
    P = cmath.exp(1j * math.pi / 8)
    rot = rotate_support(1, 1 + 1j, P)
    assert (rot.xi1 * 1).real == pytest.approx(1, abs=1e-9)
    assert (rot.xi1 * P).real == pytest.approx(1, abs=1e-9)
    assert (rot.xi2 * (1 + 1j)).real == pytest.approx(1, abs=1e-9)
    assert (rot.xi2 * P).real == pytest.approx(1, abs=1e-9)


def test_rotate_support_at_one():
    rot = rotate_support(1 - 1j, 1 + 1j, 1)
    # -i(P - C) = 1 here, so the first rotation angle is 0.
    assert rot.theta1 == pytest.approx(0.0, abs=1e-12)
    assert (rot.xi1 * (1 - 1j)).real == pytest.approx(1, abs=1e-9)
    assert (rot.xi1 * 1).real == pytest.approx(1, abs=1e-9)


def test_rotate_support_sign_pattern_inside_unit_line():
    rot = rotate_support(1 - 1j, 1 + 1j, 0.5)
    assert rot.theta2 <= 0 <= rot.theta1


def test_rotate_support_random_contract():
    rng = np.random.default_rng(5)
    for _ in range(100):
        tc, tp, td = np.sort(rng.uniform(-1.4, 1.4, 3))
        if min(tp - tc, td - tp) < 1e-3:
            continue
        C, D = complex(1, math.tan(tc)), complex(1, math.tan(td))
        P = rng.uniform(0.2, 3) * cmath.exp(1j * tp)
        rot = rotate_support(C, D, P)
        assert abs((rot.xi1 * C).real - 1) < 1e-9
        assert abs((rot.xi1 * P).real - 1) < 1e-9
        assert abs((rot.xi2 * D).real - 1) < 1e-9
        assert abs((rot.xi2 * P).real - 1) < 1e-9


def test_rotate_support_degenerate_inputs():
    with pytest.raises(DegenerateFrame):
        rotate_support(1 - 1j, 1 + 1j, 1 - 1j)
    with pytest.raises(DegenerateFrame):
        rotate_support(1 - 1j, 1 + 1j, 2 - 2j)
    with pytest.raises(InvalidInput):
        rotate_support(2, 1 + 1j, 1)
