"""Star centers of a segment times a compact convex set.

Outside the shortcut cases the segment is put in canonical position
K(1 + ia, 1 + ib), the set is rotated so its support cone seen from 0 is
spanned by 1 + ic and 1 + id, and the center is read off the ordering of
a, b against c, d.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import DEFAULT_EPS, DEFAULT_TOL
from .exceptions import ConeUndefined, InternalInconsistency, InvalidInput
from .frame import canonicalize_segment, collinear_with_origin
from .geometry import (
    ConvexBody,
    ConvexPolygon,
    Disk,
    Segment,
    as_point,
    contains_point,
    convex_hull,
    convex_intersection_point,
    scale_body,
)
from .membership import check_star_center, check_star_center_extreme, member_many
from .reports import StarCenterSet, StarReport

logger = logging.getLogger(__name__)


class SegConfig(str, Enum):
    ZERO_SHORTCUT = "zero-shortcut"
    POSITIVE_RAY = "positive-ray"
    SIMILARITY_CONTAINED = "similarity-contained"
    BELOW = "below"  # a <= b <= c <= d
    LOW_OVERLAP = "low-overlap"  # a <= c <= b <= d
    SPANNING = "spanning"  # a <= c < d <= b
    HIGH_OVERLAP = "high-overlap"  # c <= a <= d <= b
    ABOVE = "above"  # c <= d <= a <= b


@dataclass(frozen=True)
class SegConvexConfig:
    """Classification of ``s * K``.

    For the five ordering configurations ``xi1 * s = K(1 + ia, 1 + ib)`` and
    ``xi2 * K`` lies in the cone spanned by 1 + ic and 1 + id, both of which
    belong to ``xi2 * K``. For SIMILARITY_CONTAINED, ``xi1 * s`` lies in K.
    """

    config: SegConfig
    xi1: complex = 1 + 0j
    xi2: complex = 1 + 0j
    params: tuple[float, float, float, float] | None = None


def _similarity_factor(s: Segment, K: ConvexBody, eps: float) -> complex | None:
    """Some xi with xi * s inside K, i.e. a point of K / alpha and K / beta."""
    xi = convex_intersection_point(scale_body(K, 1 / s.p), scale_body(K, 1 / s.q), eps)
    if xi is None or abs(xi) <= eps:
        return None
    return complex(xi)


def support_cone(K: ConvexBody, eps: float = DEFAULT_EPS) -> tuple[complex, complex, float]:
    """Points of K on the two extreme rays from 0 and the cone's opening angle.

    The first point is on the clockwise ray. On a ray holding several
    vertices the one closest to 0 is taken.
    """
    if isinstance(K, Disk):
        c, r = K.center, K.radius
        if abs(c) <= r + eps:
            raise ConeUndefined("0 lies in the disk")
        half = math.asin(r / abs(c))
        reach = math.sqrt(abs(c) ** 2 - r * r)
        arg = cmath.phase(c)
        return reach * cmath.exp(1j * (arg - half)), reach * cmath.exp(1j * (arg + half)), 2 * half

    vs = np.asarray(K.vertices if isinstance(K, ConvexPolygon) else K.vertices(), dtype=complex)
    ref = np.mean(vs)
    if abs(ref) <= eps:
        raise ConeUndefined("the set surrounds 0")
    angles = np.angle(vs / ref)
    lo, hi = angles.min(), angles.max()
    if hi - lo >= math.pi - eps:
        raise ConeUndefined(f"support cone spans {hi - lo:.6g} >= pi")

    def nearest(mask):
        idx = np.flatnonzero(mask)
        return complex(vs[idx[np.argmin(np.abs(vs[idx]))]])

    slack = eps * max(1.0, float(np.max(np.abs(angles))))
    return nearest(angles <= lo + slack), nearest(angles >= hi - slack), float(hi - lo)


def _order_config(a: float, b: float, c: float, d: float) -> SegConfig | None:
    if b <= c:
        return SegConfig.BELOW
    if a <= c <= b <= d:
        return SegConfig.LOW_OVERLAP
    if a <= c and d <= b:
        return SegConfig.SPANNING
    if c <= a <= d <= b:
        return SegConfig.HIGH_OVERLAP
    if d <= a:
        return SegConfig.ABOVE
    return None


def classify_seg_convex(s: Segment, K: ConvexBody, eps: float = DEFAULT_EPS) -> SegConvexConfig:
    if isinstance(K, ConvexPolygon) and not K.vertices:
        raise InvalidInput("the convex factor is empty")
    if contains_point(s, 0, eps) or contains_point(K, 0, eps):
        return SegConvexConfig(SegConfig.ZERO_SHORTCUT)
    if collinear_with_origin(s, eps):
        return SegConvexConfig(SegConfig.POSITIVE_RAY, xi1=abs(s.p) / s.p)

    xi = _similarity_factor(s, K, eps)
    if xi is not None:
        logger.debug("segment %s fits into K after scaling by %s", s, xi)
        return SegConvexConfig(SegConfig.SIMILARITY_CONTAINED, xi1=xi)

    u, v, width = support_cone(K, eps)
    if width <= eps:
        return SegConvexConfig(SegConfig.POSITIVE_RAY, xi2=abs(u) / u)
    seg_frame = canonicalize_segment(s, eps)
    cone_frame = canonicalize_segment(Segment(u, v), eps)
    a, b = seg_frame.a_lo, seg_frame.a_hi
    c, d = cone_frame.a_lo, cone_frame.a_hi
    xi1, xi2 = 1 / seg_frame.omega, 1 / cone_frame.omega
    config = _order_config(a, b, c, d)
    if config is None:
        # [a, b] strictly inside (c, d): the frame segment of s sits in xi2 K
        return SegConvexConfig(SegConfig.SIMILARITY_CONTAINED, xi1=xi1 / xi2)
    logger.debug("segment x convex config %s with a=%.6g b=%.6g c=%.6g d=%.6g", config.value, a, b, c, d)
    return SegConvexConfig(config, xi1, xi2, (a, b, c, d))


def _frame_center(config: SegConvexConfig) -> complex:
    a, b, c, d = config.params
    ah, bh, ch, dh = complex(1, a), complex(1, b), complex(1, c), complex(1, d)
    if config.config in (SegConfig.BELOW, SegConfig.LOW_OVERLAP):
        return bh * ch
    if config.config is SegConfig.SPANNING:
        return ch * dh
    return ah * dh


def _body_point(K: ConvexBody) -> complex:
    if isinstance(K, Disk):
        return K.center
    if isinstance(K, Segment):
        return K.point_at(0.5)
    return K.centroid()


def star_center_seg_convex(
    s: Segment,
    K: ConvexBody,
    samples: int = 720,
    seg_samples: int = 64,
    tol: float = DEFAULT_TOL,
    eps: float = DEFAULT_EPS,
) -> StarReport:
    """A verified star center of ``s * K``.

    Every center is checked with the sampled segment test before it is
    returned; a failed check raises InternalInconsistency.
    """
    config = classify_seg_convex(s, K, eps)
    centers = None
    if config.config is SegConfig.ZERO_SHORTCUT:
        center = 0j
    elif config.config is SegConfig.POSITIVE_RAY:
        center = s.point_at(0.5) * _body_point(K)
        centers = StarCenterSet.everything()
    elif config.config is SegConfig.SIMILARITY_CONTAINED:
        center = config.xi1 * s.p * s.q
    else:
        center = _frame_center(config) / (config.xi1 * config.xi2)

    check = check_star_center(s, K, center, samples, seg_samples, tol)
    if not check.ok:
        raise InternalInconsistency(
            f"{config.config.value} center {center} fails at {check.witness.point} (t={check.witness.t:.6g})"
        )
    logger.info("segment x convex center %s (%s)", center, config.config.value)
    return StarReport.star(center, centers, candidates_tested=1, note=config.config.value)


class TriangleLemma(str, Enum):
    SHARED_END = "shared-end"  # K(1+ia, 1+id) times K(1+ic, 1+id, p), a <= c <= d
    SEPARATED = "separated"  # K(1+ia, 1+ib) times K(1+ic, 1+id, p), a < b <= c < d


def _cone_coordinates(c: float, d: float, p: complex, eps: float) -> tuple[float, float]:
    ch = complex(1, c)
    if abs(d - c) <= eps:
        t = (p / ch).real
        if abs((p / ch).imag) > eps * max(abs(p), 1.0):
            raise InvalidInput("p is not on the ray through 1 + ic")
        return t, 0.0
    det = d - c
    t1 = (d * p.real - p.imag) / det
    t2 = (p.imag - c * p.real) / det
    return t1, t2


def star_center_triangle_lemmas(
    a: float,
    c: float,
    d: float,
    p,
    which: TriangleLemma,
    b: float | None = None,
    seg_samples: int = 64,
    tol: float = DEFAULT_TOL,
    eps: float = DEFAULT_EPS,
) -> complex:
    """Star center of a segment on Re(z) = 1 times a triangle with an edge on Re(z) = 1."""
    p = as_point(p)
    which = TriangleLemma(which)
    if abs(p) <= eps:
        raise InvalidInput("p must be nonzero")
    if which is TriangleLemma.SHARED_END:
        if not a <= c <= d:
            raise InvalidInput("needs a <= c <= d")
        hi = d
    else:
        if b is None or not a < b <= c < d:
            raise InvalidInput("needs a < b <= c < d")
        hi = b
    t1, t2 = _cone_coordinates(c, d, p, eps)
    if t1 < -eps or t2 < -eps:
        raise InvalidInput("p must lie in the cone spanned by 1 + ic and 1 + id")

    K1 = Segment(complex(1, a), complex(1, hi))
    K2 = convex_hull([complex(1, c), complex(1, d), p])
    if which is TriangleLemma.SEPARATED and _similarity_factor(K1, K2, eps) is not None:
        raise InvalidInput("the segment fits into a scaled copy of the triangle")
    if which is TriangleLemma.SHARED_END:
        center = complex(1, c) * complex(1, d)
    else:
        center = complex(1, b) * complex(1, c)

    far = complex(1, a) * p
    ts = np.linspace(0.0, 1.0, max(seg_samples, 2))
    if not member_many(K1, K2, center + ts * (far - center), tol).all():
        raise InternalInconsistency(f"segment from {center} to {far} leaves the product")
    if not check_star_center_extreme(K1, K2, center, tol=tol).ok:
        raise InternalInconsistency(f"{center} fails the vertex criterion")
    logger.debug("triangle lemma %s center %s", which.value, center)
    return center
