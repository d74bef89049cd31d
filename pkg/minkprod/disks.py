"""Star centers of products with a circular disk factor."""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .config import DEFAULT_TOL
from .exceptions import InvalidInput, NotAMember
from .geometry import Disk, Segment, as_point
from .membership import check_star_center
from .reports import StarWitness
from .samplers import BaseSampler

logger = logging.getLogger(__name__)


class DiskTheorem(str, Enum):
    SUBSET = "subset"
    SEGMENT = "segment"
    STAR_SET = "star-set"


@dataclass(frozen=True)
class DiskProductCert:
    """A claimed star center of a disk product and the outcome of checking it.

    ``verified`` is only True after the sampled segment test passed. When the
    claim is refused, ``witness`` holds the exit point and ``holes`` the number
    of enclosed empty components the raster oracle found, if it was consulted.
    """

    center_claimed: complex
    theorem: DiskTheorem
    r_canonical: float
    verified: bool
    witness: StarWitness | None = None
    holes: int | None = None


def disk_times_point(d: Disk, b) -> Disk:
    b = as_point(b)
    return Disk(b * d.center, abs(b) * d.radius)


def shrink_gap(b, r: float) -> np.ndarray:
    """``|b - (1 - r^2)|^2 - |b|^2 r^2`` in factored form; <= 0 whenever |b - 1| <= r <= 1."""
    b = np.asarray(b, dtype=complex)
    return (1 - r * r) * (np.abs(b - 1) ** 2 - r * r)


def star_center_disk_subset(
    mu,
    R: float,
    S: BaseSampler,
    samples: int = 720,
    seg_samples: int = 64,
    tol: float = DEFAULT_TOL,
) -> DiskProductCert:
    """Star center ``mu^2 (1 - r^2)`` of D(mu, R) S for S inside D(mu, R), r = R / |mu|."""
    mu = as_point(mu)
    if R < 0:
        raise InvalidInput("radius must be >= 0")
    if abs(mu) <= R:
        raise InvalidInput("0 lies in D(mu, R); use the zero-center shortcut")
    r = R / abs(mu)
    center = mu * mu * (1 - r * r)
    disk = Disk(mu, R)

    pts = S.sample(samples)
    if np.any(np.abs(pts - mu) > R + tol):
        logger.warning("sampled set leaves D(%s, %s); the subset claim may not hold", mu, R)
    try:
        check = S.check_product_center(disk, center, samples, seg_samples, tol)
    except NotAMember:
        logger.info("subset center %s is not in the product", center)
        return DiskProductCert(center, DiskTheorem.SUBSET, r, False)
    logger.info("subset center %s verified=%s", center, check.ok)
    return DiskProductCert(center, DiskTheorem.SUBSET, r, check.ok, check.witness)


def segment_disk_slack(c, d, t, r: float) -> np.ndarray:
    """Slack of ``t c d + (1 - t) in c' D(1, r)`` with c' = t c + 1 - t.

    Non-negative whenever Re(c) >= 0 and |d - 1| <= r: then t|c| <= |c'|.
    """
    c, d, t = np.asarray(c, dtype=complex), np.asarray(d, dtype=complex), np.asarray(t, dtype=float)
    shifted = t * c + 1 - t
    return r * np.abs(shifted) - np.abs(t * c * d + 1 - t - shifted)


def star_center_segment_disk(
    b,
    r: float,
    samples: int = 10_000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> DiskProductCert:
    """Center 1 for K(1, b) D(1, r) with Re(b) >= 1 and 0 < r <= 1."""
    b = as_point(b)
    if not 0 < r <= 1:
        raise InvalidInput(f"r must lie in (0, 1], got {r}")
    if b.real < 1:
        raise InvalidInput(f"Re(b) must be >= 1, got {b}")

    rng = np.random.default_rng(seed)
    c = 1 + rng.uniform(0, 1, samples) * (b - 1)
    d = 1 + r * np.sqrt(rng.uniform(0, 1, samples)) * np.exp(2j * np.pi * rng.uniform(0, 1, samples))
    t = rng.uniform(0, 1, samples)
    slack = segment_disk_slack(c, d, t, r)
    if np.any(slack < -tol):
        k = int(np.argmin(slack))
        z = c[k] * d[k]
        witness = StarWitness(complex(c[k]), complex(d[k]), float(t[k]), complex(t[k] * z + 1 - t[k]))
        logger.info("segment-disk inequality failed at %s", witness)
        return DiskProductCert(1 + 0j, DiskTheorem.SEGMENT, r, False, witness)

    check = check_star_center(Segment(1, b), Disk(1, r), 1, tol=tol)
    logger.info("segment-disk center 1 for b=%s r=%s verified=%s", b, r, check.ok)
    return DiskProductCert(1 + 0j, DiskTheorem.SEGMENT, r, check.ok, check.witness)


def star_shaped_times_disk(
    S: BaseSampler,
    a,
    r: float,
    samples: int = 720,
    seg_samples: int = 64,
    grid: int = 512,
    tol: float = DEFAULT_TOL,
) -> DiskProductCert:
    """Center ``s a`` for D(a, r) S, S star-shaped about s with |s| <= |z| on S.

    A refused claim carries the raster hole count of the product.
    """
    if S.center is None:
        raise InvalidInput("the sampler must declare its star center")
    a = as_point(a)
    if abs(a) <= r:
        raise InvalidInput("0 lies in D(a, r); use the zero-center shortcut")
    s = S.center
    center = s * a
    disk = Disk(a, r)
    r_canonical = r / abs(a)

    if S.min_modulus() < abs(s) - tol:
        logger.warning("star center %s is not of minimal modulus on the set", s)
    try:
        check = S.check_product_center(disk, center, samples, seg_samples, tol)
    except NotAMember:
        check = None
    if check is not None and check.ok:
        logger.info("star-set center %s verified", center)
        return DiskProductCert(center, DiskTheorem.STAR_SET, r_canonical, True)

    holes = S.raster_with(disk, n=grid, m=max(grid // 2, 64)).hole_count()
    logger.info("star-set center %s refused, raster holes=%d", center, holes)
    witness = check.witness if check is not None else None
    return DiskProductCert(center, DiskTheorem.STAR_SET, r_canonical, False, witness, holes)
