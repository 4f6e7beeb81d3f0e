"""
k-symplectic Lie-system toolkit
Command-line entry point
"""

import asyncio
import logging
import sys
from typing import Optional, Sequence

from app.cli import build_parser, normalize_argv
from app.core.exceptions import ToolkitException, UnknownExampleException
from app.core.logging import setup_logging
from app.services import MainService

logger = logging.getLogger(__name__)


# Exception handlers
def toolkit_exception_handler(exc: ToolkitException) -> int:
    """Report a toolkit error and return its exit code"""
    if isinstance(exc, UnknownExampleException):
        print(f"error: {exc.message}. {exc.detail}", file=sys.stderr)
    else:
        logger.error(f"{type(exc).__name__}: {exc.detail}")
        print(f"error: {exc.message}", file=sys.stderr)
    return exc.exit_code


def general_exception_handler(exc: Exception) -> int:
    """Handle unexpected exceptions as runtime errors"""
    logger.error(f"Unhandled exception: {exc}", exc_info=True)
    print(f"error: {exc}", file=sys.stderr)
    return 3


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = normalize_argv(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)

    setup_logging(args.log_level)
    try:
        service = MainService(args.output_dir, args.seed, args.trials, args.tol)
        service.set_progress_callback(lambda progress, message: logger.info(f"[{progress:.0f}%] {message}"))
        return asyncio.run(args.handler(args, service))
    except ToolkitException as exc:
        return toolkit_exception_handler(exc)
    except Exception as exc:
        return general_exception_handler(exc)


if __name__ == "__main__":
    sys.exit(main())
