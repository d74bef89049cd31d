from .exceptions import (
    ConeUndefined,
    DegenerateFrame,
    InternalInconsistency,
    InvalidInput,
    MinkowskiError,
    NotAMember,
    NumericalFailure,
)
from .config import Settings
from .geometry import ConvexPolygon, Disk, Segment, convex_hull, hull_bound
from .reports import StarCenterSet, StarReport, StarWitness, Verdict
from .segments import SegmentCase, product_seg_seg, seg_square_region
from .membership import (
    check_star_center,
    check_star_center_extreme,
    exclusion_interval,
    member_exact,
    member_many,
    raster_product,
)
from .samplers import BaseSampler, BodySampler, PointSetSampler, SegmentUnionSampler
from .disks import star_center_disk_subset, star_center_segment_disk, star_shaped_times_disk
from .seg_convex import classify_seg_convex, star_center_seg_convex, star_center_triangle_lemmas
from .polygons import (
    check_star_polygon_product,
    multi_product_star_center,
    polar_envelope,
    star_center_symmetric_triangle,
    zero_center_product,
)
from .numrange import ComplexMatrix, numerical_range_boundary, product_numerical_range

__all__ = [
    "MinkowskiError",
    "InvalidInput",
    "DegenerateFrame",
    "ConeUndefined",
    "NotAMember",
    "InternalInconsistency",
    "NumericalFailure",
    "Settings",
    "Segment",
    "ConvexPolygon",
    "Disk",
    "convex_hull",
    "hull_bound",
    "StarCenterSet",
    "StarReport",
    "StarWitness",
    "Verdict",
    "SegmentCase",
    "product_seg_seg",
    "seg_square_region",
    "member_exact",
    "member_many",
    "raster_product",
    "check_star_center",
    "check_star_center_extreme",
    "exclusion_interval",
    "BaseSampler",
    "BodySampler",
    "PointSetSampler",
    "SegmentUnionSampler",
    "star_center_disk_subset",
    "star_center_segment_disk",
    "star_shaped_times_disk",
    "classify_seg_convex",
    "star_center_seg_convex",
    "star_center_triangle_lemmas",
    "check_star_polygon_product",
    "multi_product_star_center",
    "polar_envelope",
    "star_center_symmetric_triangle",
    "zero_center_product",
    "ComplexMatrix",
    "numerical_range_boundary",
    "product_numerical_range",
]
