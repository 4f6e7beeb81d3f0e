"""
Main command-line parser
"""

import argparse

from app.core.config import settings

from .commands import integrate, report, verify


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klie",
        description=settings.PROJECT_NAME,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    # Include all command parsers
    verify.register(subparsers)
    integrate.register(subparsers)
    report.register(subparsers)
    return parser
