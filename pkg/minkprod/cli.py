"""Command line front end: ``product``, ``verify`` and ``numrange``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 I/O error.
"""
import argparse
import logging
import sys

import numpy as np

from .config import LOG_LEVELS, Settings
from .exceptions import DegenerateFrame, InvalidInput, MinkowskiError
from .geometry import ConvexBody, Segment
from .membership import RasterGrid, raster_product, write_pgm
from .numrange import numerical_range_boundary, product_numerical_range
from .scenarios import ALIASES, SCENARIOS, run_scenario
from .scene import load_matrix, load_scene, write_csv
from .segments import product_seg_seg
from .svg import SVG, product_svg

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3


def _raster_outline(grid: RasterGrid) -> np.ndarray:
    """Centers of occupied cells next to an empty one, row by row."""
    occ = grid.occupancy
    padded = np.pad(occ, 1)
    inner = padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    return grid.cell_centers()[occ & ~inner]


def cmd_product(args, settings: Settings) -> int:
    scene = load_scene(args.scene)
    K1, K2 = scene.body(args.a), scene.body(args.b)
    outline, grid = None, None
    if isinstance(K1, Segment) and isinstance(K2, Segment):
        region = product_seg_seg(K1, K2, settings.eps)
        outline = region.boundary_points(64)
        boundary = outline
        print(f"segment product: {region.case.value}, star centers {region.star_centers.describe()}")
    else:
        grid = raster_product(K1, K2, n=settings.grid, m=settings.samples, threads=settings.threads, seed=settings.seed)
        boundary = _raster_outline(grid)
        print(f"raster product: {int(grid.occupancy.sum())} cells, {grid.hole_count()} holes")

    if args.out_svg:
        product_svg(K1, K2, outline, grid).save(args.out_svg)
    if args.out_csv:
        write_csv(boundary, args.out_csv)
    if args.out_pgm:
        write_pgm(grid if grid is not None else raster_product(K1, K2, n=settings.grid, m=settings.samples), args.out_pgm)
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    names = list(SCENARIOS) if args.scenario == "all" else [args.scenario]
    failed = 0
    for name in names:
        result = run_scenario(name, tol=settings.tol)
        print("=" * 60)
        print(f"{name}: {'PASS' if result.passed else 'FAIL'}")
        for check in result.checks:
            mark = "ok" if check.ok else "FAILED"
            print(f"  {check.label}: measured {check.measured} expected {check.expected} [{mark}]")
        failed += not result.passed
    print("=" * 60)
    return EXIT_FAILED if failed else EXIT_OK


def _body_of_polygon(P) -> ConvexBody:
    return P.to_segment() if len(P) == 2 else P


def cmd_numrange(args, settings: Settings) -> int:
    A = load_matrix(args.matrix)
    P = numerical_range_boundary(A, args.angles, args.solver, threads=settings.threads)
    print(f"numerical range: {len(P)} vertices")
    if args.out_csv:
        write_csv(P.vertices, args.out_csv)
    if args.product is None:
        if args.out_svg:
            vs = np.asarray(P.vertices)
            svg = SVG((vs.real.min(), vs.real.max(), vs.imag.min(), vs.imag.max()))
            svg.body(_body_of_polygon(P))
            svg.save(args.out_svg)
        return EXIT_OK

    B = A if args.product == "self" else load_matrix(args.product)
    P1, P2, handle = product_numerical_range(A, B, args.angles, args.solver)
    grid = handle.raster(n=settings.grid, m=settings.samples, threads=settings.threads, seed=settings.seed)
    print(f"product raster: {int(grid.occupancy.sum())} cells, {grid.hole_count()} holes")
    if args.out_svg:
        product_svg(_body_of_polygon(P1), _body_of_polygon(P2), grid=grid).save(args.out_svg)
    return EXIT_OK


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minkprod", description="Minkowski products of planar convex sets")
    parser.add_argument("--tol", type=float, default=settings.tol, help="membership tolerance of the verify checks")
    parser.add_argument("--grid", type=int, default=settings.grid, help="raster cells per axis")
    parser.add_argument("--samples", type=int, default=settings.samples, help="boundary samples per factor")
    parser.add_argument("--seed", type=int, default=settings.seed, help="oracle jitter seed, 0 = deterministic")
    parser.add_argument(
        "--log-level", type=str.upper, choices=LOG_LEVELS, default=settings.log_level
    )
    sub = parser.add_subparsers(dest="command", required=True)

    product = sub.add_parser("product", help="draw a product of two scene sets")
    product.add_argument("scene")
    product.add_argument("a")
    product.add_argument("b")
    product.add_argument("--out-svg")
    product.add_argument("--out-csv")
    product.add_argument("--out-pgm")
    product.set_defaults(run=cmd_product)

    verify = sub.add_parser("verify", help="run a reproduction scenario")
    verify.add_argument("scenario", help=f"one of: all, {', '.join([*SCENARIOS, *ALIASES])}")
    verify.set_defaults(run=cmd_verify)

    numrange = sub.add_parser("numrange", help="numerical range of a matrix file")
    numrange.add_argument("matrix")
    numrange.add_argument("--angles", type=int, default=360)
    numrange.add_argument("--solver", choices=("numpy", "jacobi"), default="numpy")
    numrange.add_argument("--product", help='second matrix file, or "self"')
    numrange.add_argument("--out-svg")
    numrange.add_argument("--out-csv")
    numrange.set_defaults(run=cmd_numrange)
    return parser


def main(argv=None) -> int:
    try:
        base = Settings.from_env()
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    args = build_parser(base).parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    settings = Settings(
        tol=args.tol,
        eps=base.eps,
        grid=args.grid,
        samples=args.samples,
        seed=args.seed,
        threads=base.threads,
        log_level=args.log_level,
    )
    try:
        settings.validate()
        return args.run(args, settings)
    except (InvalidInput, DegenerateFrame) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except MinkowskiError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
