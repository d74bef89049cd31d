"""Numerical ranges W(A) and products W(A)W(B).

The boundary point of W(A) in direction theta is x*Ax for a unit top
eigenvector x of the Hermitian part of e^{-i theta} A. A repeated top
eigenvalue means a flat edge; its two ends are found inside the top
eigenspace.
"""
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, thread_count
from .exceptions import InvalidInput, NumericalFailure
from .geometry import ConvexPolygon, convex_hull, hull_bound
from .membership import RasterGrid, member_exact, member_many, raster_product
from .polygons import check_star_polygon_product
from .reports import StarReport

logger = logging.getLogger(__name__)

FLAT_GAP = 1e-10
SOLVERS = ("numpy", "jacobi")


@dataclass(frozen=True, eq=False)
class ComplexMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise InvalidInput(f"matrix must be square and nonempty, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise InvalidInput("matrix entries must be finite")
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_json(cls, data) -> "ComplexMatrix":
        """Accept ``{"n": n, "entries": [[[re, im], ...], ...]}`` as a dict or JSON text."""
        if isinstance(data, (str, bytes)):
            try:
                data = json.loads(data)
            except ValueError as exc:
                raise InvalidInput(f"matrix JSON does not parse: {exc}") from exc
        try:
            n = int(data["n"])
            rows = [[_entry(e) for e in row] for row in data["entries"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed matrix: {exc}") from exc
        matrix = cls(np.array(rows, dtype=complex))
        if matrix.n != n:
            raise InvalidInput(f"declared n={n} but entries are {matrix.n}x{matrix.n}")
        return matrix

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }


def _entry(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    re, im = value
    return complex(float(re), float(im))


def disk_matrix(mu, R: float) -> ComplexMatrix:
    """2x2 matrix with W = D(mu, R)."""
    if R < 0:
        raise InvalidInput("radius must be >= 0")
    return ComplexMatrix(np.array([[mu, 2 * R], [0, mu]], dtype=complex))


def diagonal_matrix(values) -> ComplexMatrix:
    return ComplexMatrix(np.diag(np.asarray(values, dtype=complex)))


def jacobi_eigh(a, tol: float = 1e-12, max_rotations: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvector columns of a real symmetric matrix by Jacobi rotations."""
    a = np.array(a, dtype=float)
    n = len(a)
    if a.shape != (n, n) or not np.allclose(a, a.T):
        raise InvalidInput("jacobi_eigh needs a real symmetric matrix")
    p = np.identity(n)
    scale = max(float(np.abs(a).max(initial=0.0)), 1.0)
    limit = max_rotations or max(5 * n * n, 1)
    for _ in range(limit):
        off = np.abs(np.triu(a, 1))
        k, l = np.unravel_index(int(np.argmax(off)), off.shape)
        if off[k, l] < tol * scale:
            return np.diagonal(a).copy(), p
        diff = a[l, l] - a[k, k]
        if abs(a[k, l]) < abs(diff) * 1.0e-36:
            t = a[k, l] / diff
        else:
            phi = diff / (2.0 * a[k, l])
            t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
            if phi < 0.0:
                t = -t
        c = 1.0 / math.sqrt(t * t + 1.0)
        s = t * c
        ak, al = a[:, k].copy(), a[:, l].copy()
        a[:, k], a[:, l] = c * ak - s * al, s * ak + c * al
        ak, al = a[k, :].copy(), a[l, :].copy()
        a[k, :], a[l, :] = c * ak - s * al, s * ak + c * al
        a[k, l] = a[l, k] = 0.0
        pk, pl = p[:, k].copy(), p[:, l].copy()
        p[:, k], p[:, l] = c * pk - s * pl, s * pk + c * pl
    raise NumericalFailure(f"Jacobi method did not converge in {limit} rotations")


def _top_space(H: np.ndarray, solver: str) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a Hermitian H and an orthonormal basis of its eigenspace."""
    gap = FLAT_GAP * max(1.0, float(np.abs(H).max()))
    if solver == "numpy":
        try:
            lam, vecs = np.linalg.eigh(H)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(str(exc)) from exc
        top = lam[-1]
        return float(top), vecs[:, lam >= top - gap]

    # real embedding [[X, -Y], [Y, X]] doubles every eigenvalue
    n = H.shape[0]
    X, Y = H.real, H.imag
    lam, vecs = jacobi_eigh(np.block([[X, -Y], [Y, X]]))
    top = lam.max()
    cluster = vecs[:, lam >= top - gap]
    basis, sv, _ = np.linalg.svd(cluster[:n] + 1j * cluster[n:], full_matrices=False)
    return float(top), basis[:, sv > 0.5]


def _boundary_points(A: np.ndarray, theta: float, solver: str) -> list[complex]:
    rotated = np.exp(-1j * theta) * A
    H = 0.5 * (rotated + rotated.conj().T)
    _, Q = _top_space(H, solver)
    if Q.shape[1] == 1:
        x = Q[:, 0]
        return [complex(x.conj() @ A @ x)]
    # flat edge: Im(e^{-i theta} x*Ax) over the top eigenspace
    B = Q.conj().T @ rotated @ Q
    S = (B - B.conj().T) / 2j
    try:
        _, ys = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    ends = [Q @ ys[:, 0], Q @ ys[:, -1]]
    return [complex(x.conj() @ A @ x) for x in ends]


def numerical_range_points(
    A: ComplexMatrix,
    angles: int = 360,
    solver: str = "numpy",
    offset: float = 0.0,
    threads: int | None = None,
) -> np.ndarray:
    """Boundary points of W(A) for the directions offset + 2 pi k / angles."""
    if angles < 3:
        raise InvalidInput("need at least 3 angles")
    if solver not in SOLVERS:
        raise InvalidInput(f"unknown solver {solver!r}; expected one of {SOLVERS}")
    thetas = offset + 2 * np.pi * np.arange(angles) / angles
    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        parts = list(pool.map(lambda t: _boundary_points(A.entries, float(t), solver), thetas))
    points = np.array([z for part in parts for z in part])
    logger.debug("numerical range: %d points from %d angles (%s)", len(points), angles, solver)
    return points


def numerical_range_boundary(
    A: ComplexMatrix,
    angles: int = 360,
    solver: str = "numpy",
    offset: float = 0.0,
    threads: int | None = None,
) -> ConvexPolygon:
    return convex_hull(numerical_range_points(A, angles, solver, offset, threads))


@dataclass(frozen=True)
class ProductHandle:
    """W(A) W(B) as a product of the two polygonal approximations."""

    K1: ConvexPolygon
    K2: ConvexPolygon

    def member_many(self, zs, tol: float = DEFAULT_TOL) -> np.ndarray:
        return member_many(self.K1, self.K2, zs, tol)

    def member(self, z, tol: float = DEFAULT_TOL) -> bool:
        return member_exact(self.K1, self.K2, z, tol)

    def hull(self) -> ConvexPolygon:
        return hull_bound(self.K1, self.K2)

    def raster(self, n: int = 1024, m: int = 512, threads: int | None = None, seed: int = 0) -> RasterGrid:
        return raster_product(self.K1, self.K2, n, m, threads, seed)

    def check_star(self, **kwargs) -> StarReport:
        return check_star_polygon_product(self.K1, self.K2, **kwargs)


def product_numerical_range(
    A: ComplexMatrix,
    B: ComplexMatrix,
    angles: int = 360,
    solver: str = "numpy",
) -> tuple[ConvexPolygon, ConvexPolygon, ProductHandle]:
    P1 = numerical_range_boundary(A, angles, solver)
    P2 = numerical_range_boundary(B, angles, solver)
    logger.info("product numerical range from %d- and %d-vertex polygons", len(P1), len(P2))
    return P1, P2, ProductHandle(P1, P2)
