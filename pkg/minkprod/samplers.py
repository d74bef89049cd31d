"""Planar sets that are not a single convex body.

A sampler describes a set S as a finite union of convex pieces, so the
product S K is the union of the piece products and every membership
question goes through the exact engine piece by piece.
"""
import logging
import math
from typing import Iterable, Sequence

import numpy as np

from .config import DEFAULT_TOL
from .exceptions import InvalidInput, NotAMember
from .geometry import (
    ConvexBody,
    ConvexPolygon,
    Segment,
    as_point,
    body_boundary,
    body_interior_grid,
    contains_points,
    distance_to_body,
)
from .membership import RasterGrid, StarCheck, member_many, raster_union, sweep_segments

logger = logging.getLogger(__name__)


class BaseSampler:
    """A union of convex pieces with an optional declared star center."""

    center: complex | None = None

    def pieces(self) -> list[ConvexBody]:
        raise NotImplementedError()

    def sample(self, n: int) -> np.ndarray:
        raise NotImplementedError()

    def contains_many(self, zs, tol: float = DEFAULT_TOL) -> np.ndarray:
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        hit = np.zeros(zs.shape, dtype=bool)
        for piece in self.pieces():
            hit |= contains_points(piece, zs, tol)
        return hit

    def min_modulus(self) -> float:
        origin = np.array([0j])
        return min(float(distance_to_body(piece, origin)[0]) for piece in self.pieces())

    def product_member_many(self, body: ConvexBody, zs, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Vectorised ``z in S * body``."""
        zs = np.atleast_1d(np.asarray(zs, dtype=complex))
        hit = np.zeros(zs.shape, dtype=bool)
        for piece in self.pieces():
            todo = ~hit
            if not todo.any():
                break
            hit[todo] = member_many(piece, body, zs[todo], tol)
        return hit

    def raster_with(self, body: ConvexBody, n: int = 1024, m: int = 512, threads: int | None = None, seed: int = 0) -> RasterGrid:
        return raster_union([(piece, body) for piece in self.pieces()], n, m, threads, seed)

    def check_product_center(
        self,
        body: ConvexBody,
        p,
        samples: int = 720,
        seg_samples: int = 64,
        tol: float = DEFAULT_TOL,
    ) -> StarCheck:
        """Sampled star test of ``p`` for S * body: segments from p to s d, s in S, d on the boundary of body."""
        p = as_point(p)

        def member(zs):
            return self.product_member_many(body, zs, tol)

        if not member(np.array([p]))[0]:
            raise NotAMember(f"{p} is not in the product")
        k = max(int(math.ceil(math.sqrt(samples))), 2)
        return sweep_segments(member, p, self.sample(k), body_boundary(body, k), seg_samples)


class BodySampler(BaseSampler):
    """A single convex body."""

    def __init__(self, body: ConvexBody, center=None):
        self.body = body
        self.center = None if center is None else as_point(center)

    def pieces(self) -> list[ConvexBody]:
        return [self.body]

    def sample(self, n: int) -> np.ndarray:
        boundary = body_boundary(self.body, max(n // 2, 1))
        return np.concatenate([boundary, body_interior_grid(self.body, max(n - len(boundary), 4))])


class SegmentUnionSampler(BaseSampler):
    """A finite union of segments, e.g. a star of spokes around its center."""

    def __init__(self, segments: Sequence[Segment], center=None):
        if not segments:
            raise InvalidInput("a segment union needs at least one segment")
        self.segments = list(segments)
        self.center = None if center is None else as_point(center)

    @classmethod
    def spokes(cls, center, tips: Iterable) -> "SegmentUnionSampler":
        center = as_point(center)
        return cls([Segment(center, as_point(t)) for t in tips], center)

    def pieces(self) -> list[ConvexBody]:
        return list(self.segments)

    def sample(self, n: int) -> np.ndarray:
        per = max(n // len(self.segments), 2)
        return np.concatenate([body_boundary(s, per) for s in self.segments])


class PointSetSampler(BaseSampler):
    """A finite set of points."""

    def __init__(self, points: Iterable, center=None):
        self.points = [as_point(z) for z in points]
        if not self.points:
            raise InvalidInput("a point set needs at least one point")
        self.center = None if center is None else as_point(center)

    def pieces(self) -> list[ConvexBody]:
        return [ConvexPolygon((z,)) for z in self.points]

    def sample(self, n: int) -> np.ndarray:
        return np.array(self.points, dtype=complex)
