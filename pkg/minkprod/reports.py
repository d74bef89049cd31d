"""Result types shared by the star-center modules."""
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .config import DEFAULT_EPS
from .exceptions import InternalInconsistency
from .geometry import ConvexPolygon, Segment, contains_point, convex_hull


class Verdict(str, Enum):
    STAR_SHAPED = "star-shaped"
    NOT_STAR_SHAPED = "not-star-shaped"
    UNKNOWN = "unknown"


class CenterKind(str, Enum):
    EMPTY = "empty"
    POINT = "point"
    SEGMENT = "segment"
    CONVEX = "convex"
    ALL = "all"


@dataclass(frozen=True)
class StarCenterSet:
    """A set of star centers; ``ALL`` means every point of the (convex) product.

    ``complete`` is False when only a subset of the centers is known.
    """

    kind: CenterKind
    point: complex | None = None
    segment: Segment | None = None
    region: ConvexPolygon | None = None
    complete: bool = True

    @classmethod
    def empty(cls) -> "StarCenterSet":
        return cls(CenterKind.EMPTY)

    @classmethod
    def everything(cls) -> "StarCenterSet":
        return cls(CenterKind.ALL)

    @classmethod
    def at(cls, z: complex, complete: bool = True) -> "StarCenterSet":
        return cls(CenterKind.POINT, point=complex(z), complete=complete)

    @classmethod
    def spanning(cls, points: Iterable[complex], complete: bool = True) -> "StarCenterSet":
        """Convex hull of ``points``, collapsed to a point or segment when thin."""
        hull = convex_hull(points)
        if len(hull) == 1:
            return cls.at(hull.vertices[0], complete)
        if len(hull) == 2:
            return cls(CenterKind.SEGMENT, segment=hull.to_segment(), complete=complete)
        return cls(CenterKind.CONVEX, region=hull, complete=complete)

    def contains(self, z: complex, tol: float = DEFAULT_EPS) -> bool:
        if self.kind is CenterKind.ALL:
            return True
        if self.kind is CenterKind.POINT:
            return abs(z - self.point) <= tol
        if self.kind is CenterKind.SEGMENT:
            return contains_point(self.segment, z, tol)
        if self.kind is CenterKind.CONVEX:
            return contains_point(self.region, z, tol)
        return False

    def representative(self) -> complex | None:
        if self.kind is CenterKind.POINT:
            return self.point
        if self.kind is CenterKind.SEGMENT:
            return self.segment.point_at(0.5)
        if self.kind is CenterKind.CONVEX:
            return self.region.centroid()
        return None

    def vertices(self) -> tuple[complex, ...]:
        if self.kind is CenterKind.POINT:
            return (self.point,)
        if self.kind is CenterKind.SEGMENT:
            return self.segment.vertices()
        if self.kind is CenterKind.CONVEX:
            return self.region.vertices
        return ()

    def describe(self) -> str:
        if self.kind in (CenterKind.EMPTY, CenterKind.ALL):
            return self.kind.value
        pts = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in self.vertices())
        return f"{self.kind.value}[{pts}]"


@dataclass(frozen=True)
class StarWitness:
    """Segment exit: ``point = p + t (a b - p)`` is not in the product."""

    a: complex
    b: complex
    t: float
    point: complex


@dataclass(frozen=True)
class StarReport:
    verdict: Verdict
    center: complex | None = None
    centers: StarCenterSet = field(default_factory=lambda: StarCenterSet(CenterKind.EMPTY, complete=False))
    witness: StarWitness | None = None
    candidates_tested: int = 0
    note: str = ""

    def __post_init__(self):
        if self.verdict is Verdict.STAR_SHAPED and self.center is None:
            raise InternalInconsistency("a star-shaped report needs a center")
        if self.verdict is Verdict.NOT_STAR_SHAPED and self.witness is None:
            raise InternalInconsistency("a not-star-shaped report needs a witness")

    @property
    def is_star_shaped(self) -> bool:
        return self.verdict is Verdict.STAR_SHAPED

    @classmethod
    def star(cls, center: complex, centers: StarCenterSet | None = None, **kwargs) -> "StarReport":
        return cls(Verdict.STAR_SHAPED, complex(center), centers or StarCenterSet.at(center, complete=False), **kwargs)

    @classmethod
    def not_star(cls, witness: StarWitness, **kwargs) -> "StarReport":
        return cls(Verdict.NOT_STAR_SHAPED, witness=witness, centers=StarCenterSet.empty(), **kwargs)

    @classmethod
    def unknown(cls, **kwargs) -> "StarReport":
        return cls(Verdict.UNKNOWN, **kwargs)
