"""
report command
Aggregates cached results, or runs everything first with --run-all
"""

import argparse

from app.services import MainService

from ..options import common_options


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "report",
        parents=[common_options()],
        help="summarize cached verification and integration results",
    )
    parser.add_argument("--run-all", action="store_true", help="run every suite for every example first")
    parser.add_argument("--progress", action="store_true", help="show a progress bar for --run-all")
    parser.set_defaults(handler=run)


async def run(args: argparse.Namespace, service: MainService) -> int:
    report = await service.report(run_all=args.run_all, show_progress=args.progress)
    print(service.reporter.render_aggregate(report, args.format))
    return 0
