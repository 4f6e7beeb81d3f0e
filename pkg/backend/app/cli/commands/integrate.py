"""
integrate command
RK4 runs with optional prolongation, invariant drift and superposition checks
"""

import argparse
import logging

from app.core.config import settings
from app.services import MainService

from ..options import coefficient_overrides, common_options, parse_point

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "integrate",
        parents=[common_options()],
        help="integrate an example system",
        description="Integrate dx/dt = sum_alpha b_alpha(t) X_alpha(x) with fixed-step RK4.",
    )
    parser.add_argument("example_id", nargs="?", help="registered example id")
    parser.add_argument("--x0", type=parse_point, help="initial point, comma separated")
    parser.add_argument(
        "--x0b", type=parse_point, action="append", default=[],
        help="initial point of a further copy (repeatable)",
    )
    parser.add_argument("--t1", type=float, help=f"end time (default: {settings.T1})")
    parser.add_argument("--step", type=float, help=f"RK4 step (default: {settings.RK4_STEP})")
    parser.add_argument(
        "--coeff", action="append", default=[], metavar="NAME=EXPR",
        help="override a t-coefficient, e.g. --coeff b1='cos(t)' (repeatable)",
    )
    parser.add_argument("--prolong", type=int, help=f"number of copies, at most {settings.MAX_PROLONG}")
    parser.add_argument("--invariants", action="store_true", help="measure the drift of registered invariants")
    parser.add_argument(
        "--superposition", action="store_true",
        help="integrate x0 and every x0b independently and check the invariants across them",
    )
    parser.add_argument("--drift-tol", type=float, help=f"drift tolerance (default: {settings.DRIFT_TOL})")
    parser.set_defaults(handler=run)


async def run(args: argparse.Namespace, service: MainService) -> int:
    """Exit 1 when a measured invariant drifts beyond the tolerance"""
    options = {"t1": args.t1, "step": args.step, "tol": args.drift_tol}
    if not args.superposition:
        options.update(prolong=args.prolong, invariants=args.invariants)
    report = await service.integrate(
        args.example_id,
        load=args.load,
        superposition=args.superposition,
        x0=args.x0,
        x0b=args.x0b,
        coefficients=coefficient_overrides(args.coeff),
        **options,
    )
    print(service.reporter.render_integration(report, args.format))
    if not report.passed:
        logger.info(f"{report.example_id}: invariant drift exceeds tolerance")
    return 0 if report.passed else 1
