import cmath
import json
import math

import numpy as np
import pytest

from minkprod import InvalidInput
from minkprod.numrange import (
    ComplexMatrix,
    diagonal_matrix,
    disk_matrix,
    jacobi_eigh,
    numerical_range_boundary,
    numerical_range_points,
    product_numerical_range,
)
from minkprod.reports import Verdict


def _random_matrix(rng, n=4):
    return ComplexMatrix(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


def _hausdorff(a, b):
    a, b = np.asarray(a), np.asarray(b)
    d = np.abs(a[:, None] - b[None, :])
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def test_nilpotent_gives_circle_of_radius_half():
    pts = numerical_range_points(ComplexMatrix(np.array([[0, 1], [0, 0]])), 360, threads=2)
    assert len(pts) == 360
    assert np.abs(pts) == pytest.approx(np.full(360, 0.5), abs=1e-8)
    assert len(numerical_range_boundary(ComplexMatrix(np.array([[0, 1], [0, 0]])), 360)) == 360


def test_normal_matrix_gives_eigenvalue_segment():
    P = numerical_range_boundary(diagonal_matrix([1, 1j]), 64, threads=1)
    assert len(P) == 2
    assert _hausdorff(P.vertices, [1, 1j]) < 1e-9


def test_diagonal_matrix_gives_eigenvalue_hull():
    values = [cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3), 0.95 * cmath.exp(1j * math.pi / 4)]
    P = numerical_range_boundary(diagonal_matrix(values), 90, threads=1)
    assert _hausdorff(P.vertices, values) < 1e-9


def test_hermitian_gives_real_interval():
    rng = np.random.default_rng(2)
    M = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    H = ComplexMatrix(M + M.conj().T)
    P = numerical_range_boundary(H, 36, threads=1)
    lam = np.linalg.eigvalsh(H.entries)
    assert len(P) == 2
    assert sorted(z.real for z in P.vertices) == pytest.approx([lam[0], lam[-1]], abs=1e-9)
    assert all(abs(z.imag) < 1e-9 for z in P.vertices)


def test_disk_matrix_range():
    pts = numerical_range_points(disk_matrix(1 + 1j, 0.5), 72, threads=1)
    assert np.abs(pts - (1 + 1j)) == pytest.approx(np.full(72, 0.5), abs=1e-9)


def test_rotation_and_translation_equivariance():
    rng = np.random.default_rng(7)
    for _ in range(10):
        A = _random_matrix(rng)
        base = numerical_range_boundary(A, 60, threads=1).vertices
        phi = rng.uniform(0, 2 * math.pi)
        rotated = numerical_range_boundary(ComplexMatrix(cmath.exp(1j * phi) * A.entries), 60, offset=phi, threads=1)
        assert _hausdorff(rotated.vertices, cmath.exp(1j * phi) * np.array(base)) < 1e-8
        c = complex(*rng.normal(size=2))
        shifted = numerical_range_boundary(ComplexMatrix(A.entries + c * np.eye(4)), 60, threads=1)
        assert _hausdorff(shifted.vertices, np.array(base) + c) < 1e-8


def test_support_function_consistency():
    rng = np.random.default_rng(11)
    A = _random_matrix(rng)
    angles = 48
    pts = numerical_range_points(A, angles, threads=1)
    for k, v in enumerate(pts):
        theta = 2 * math.pi * k / angles
        R = cmath.exp(-1j * theta) * A.entries
        top = np.linalg.eigvalsh(0.5 * (R + R.conj().T)).max()
        assert (cmath.exp(-1j * theta) * v).real == pytest.approx(top, abs=1e-8)


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(4)
    M = rng.normal(size=(6, 6))
    S = M + M.T
    lam, vecs = jacobi_eigh(S)
    assert np.sort(lam) == pytest.approx(np.linalg.eigvalsh(S), abs=1e-9)
    assert S @ vecs == pytest.approx(vecs * lam, abs=1e-9)

    A = _random_matrix(rng, 3)
    a = numerical_range_points(A, 24, solver="jacobi", threads=1)
    b = numerical_range_points(A, 24, solver="numpy", threads=1)
    assert a == pytest.approx(b, abs=1e-8)


def test_jacobi_flat_edge():
    P = numerical_range_boundary(diagonal_matrix([1, 1j, -1]), 16, solver="jacobi", threads=1)
    assert _hausdorff(P.vertices, [1, 1j, -1]) < 1e-9


def test_bad_inputs():
    with pytest.raises(InvalidInput):
        ComplexMatrix(np.zeros((2, 3)))
    with pytest.raises(InvalidInput):
        ComplexMatrix(np.array([[np.nan]]))
    with pytest.raises(InvalidInput):
        numerical_range_points(diagonal_matrix([1, 2]), 2)
    with pytest.raises(InvalidInput):
        numerical_range_points(diagonal_matrix([1, 2]), 8, solver="lapack")
    with pytest.raises(InvalidInput):
        jacobi_eigh([[0, 1], [2, 0]])


def test_matrix_json():
    A = ComplexMatrix(np.array([[1, 2j], [0.5 - 1j, 3]]))
    again = ComplexMatrix.from_json(json.dumps(A.to_json()))
    assert np.array_equal(again.entries, A.entries)
    with pytest.raises(InvalidInput):
        ComplexMatrix.from_json({"n": 3, "entries": [[[1, 0]]]})
    with pytest.raises(InvalidInput):
        ComplexMatrix.from_json("{not json")
    with pytest.raises(InvalidInput):
        ComplexMatrix.from_json({"entries": [[1]]})


def test_product_of_triangle_ranges_is_not_star_shaped():
    values = [cmath.exp(1j * math.pi / 3), cmath.exp(-1j * math.pi / 3), 0.95 * cmath.exp(1j * math.pi / 4)]
    T = diagonal_matrix(values)
    P1, P2, handle = product_numerical_range(T, T, angles=90)
    assert len(P1) == 3 and len(P2) == 3
    assert not handle.member(1 + 0.5 * (0.9025j - 1))
    assert handle.check_star(threads=2).verdict is Verdict.NOT_STAR_SHAPED


def test_product_of_nested_disk_ranges_is_star_shaped():
    _, _, handle = product_numerical_range(disk_matrix(1, 0.5), disk_matrix(1, 0.2), angles=64)
    assert handle.member(0.75)
    assert handle.raster(n=128, m=64).hole_count() == 0
