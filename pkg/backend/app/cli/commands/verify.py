"""
verify command
Runs identity suites for one example
"""

import argparse
import logging

from app.models import Suite
from app.services import MainService

from ..options import common_options

logger = logging.getLogger(__name__)

SUITES = [suite.value for suite in Suite]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=[common_options()],
        help="verify the identities of an example",
        description="Run the structure, hamiltonian, algebra, brackets and stability suites.",
    )
    parser.add_argument("example_id", nargs="?", help="registered example id")
    parser.add_argument("suite", nargs="?", default=Suite.ALL.value, choices=SUITES, help="suite to run (default: all)")
    parser.set_defaults(handler=run)


async def run(args: argparse.Namespace, service: MainService) -> int:
    """Exit 0 when every check passes, 1 otherwise"""
    example_id, suite = args.example_id, args.suite
    if args.load and example_id in SUITES:
        # `verify --load sys.json brackets`: the only positional is the suite
        example_id, suite = None, example_id
    report = await service.verify(example_id, suite, load=args.load)
    print(service.reporter.render_verification(report, args.format))
    if not report.passed:
        failed = [check.name for check in report.checks if not check.passed]
        logger.info(f"{report.example_id}: {len(failed)} checks failed")
    return 0 if report.passed else 1
