"""Canonical position of a segment: s = omega * K(1 + i a_lo, 1 + i a_hi)."""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

from .config import DEFAULT_EPS
from .exceptions import DegenerateFrame, InvalidInput
from .geometry import Segment, as_point

logger = logging.getLogger(__name__)


def collinear_with_origin(s: Segment, eps: float = DEFAULT_EPS) -> bool:
    """Whether the line through ``s`` passes through 0 (points always do)."""
    area = (s.p.conjugate() * s.q).imag
    return abs(area) <= eps * max(abs(s.p) * abs(s.q), 1.0)


@dataclass(frozen=True)
class CanonicalSegment:
    omega: complex
    a_lo: float
    a_hi: float

    def point(self, a: float) -> complex:
        return self.omega * complex(1.0, a)

    def endpoints(self) -> tuple[complex, complex]:
        return self.point(self.a_lo), self.point(self.a_hi)

    def segment(self) -> Segment:
        return Segment(*self.endpoints())

    def parameter(self, z: complex) -> float:
        return (z / self.omega).imag


def canonicalize_segment(s: Segment, eps: float = DEFAULT_EPS) -> CanonicalSegment:
    if s.is_degenerate(eps):
        raise InvalidInput("a zero-length segment has no canonical frame")
    if collinear_with_origin(s, eps):
        raise DegenerateFrame(f"line through {s.p} and {s.q} passes through 0")
    a1, a2 = s.p, s.q
    omega = (a1 * a2.conjugate() - a2 * a1.conjugate()) / (2 * (a2.conjugate() - a1.conjugate()))
    lo, hi = (a1 / omega).imag, (a2 / omega).imag
    if lo > hi:
        lo, hi = hi, lo
    return CanonicalSegment(omega, lo, hi)


class SupportRotation(NamedTuple):
    xi1: complex
    xi2: complex
    theta1: float
    theta2: float


def _on_unit_line(z: complex, name: str, eps: float) -> float:
    if abs(z.real - 1.0) > eps:
        raise InvalidInput(f"{name} must lie on Re(z) = 1, got {z}")
    return math.atan(z.imag)


def rotate_support(C, D, P, eps: float = DEFAULT_EPS) -> SupportRotation:
    """Rotate-and-dilate factors that put C, P (and D, P) back on Re(z) = 1.

    ``xi1 * C`` and ``xi1 * P`` share real part 1, as do ``xi2 * D`` and ``xi2 * P``.
    """
    C, D, P = as_point(C), as_point(D), as_point(P)
    theta_c = _on_unit_line(C, "C", eps)
    theta_d = _on_unit_line(D, "D", eps)
    if abs(P) <= eps:
        raise InvalidInput("P must be nonzero")
    theta_p = math.atan2(P.imag, P.real)
    if not theta_c - eps <= theta_p <= theta_d + eps:
        raise InvalidInput("P must lie in the cone spanned by C and D")
    if abs(P - C) <= eps or abs(P - D) <= eps:
        raise DegenerateFrame("P coincides with C or D")

    u1 = -1j * (P - C) / abs(P - C)
    theta1 = math.atan2(u1.imag, u1.real)
    u2 = 1j * (P - D) / abs(P - D)
    theta2 = math.atan2(u2.imag, u2.real)
    c1, c2 = math.cos(theta_c - theta1), math.cos(theta_d - theta2)
    if abs(c1) <= eps or abs(c2) <= eps:
        raise DegenerateFrame("P is collinear with 0 and C or D")
    xi1 = math.cos(theta_c) / c1 * u1.conjugate()
    xi2 = math.cos(theta_d) / c2 * u2.conjugate()
    logger.debug("rotate_support theta1=%.6g theta2=%.6g", theta1, theta2)
    return SupportRotation(xi1, xi2, theta1, theta2)
