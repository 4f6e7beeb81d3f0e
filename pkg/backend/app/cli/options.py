"""
Shared command-line options and value parsers
"""

import argparse
from typing import Dict, List, Sequence

from app.core.exceptions import UsageException
from app.services.report import FORMATS

POINT_FLAGS = ("--x0", "--x0b")


def parse_point(text: str) -> List[float]:
    """"0,1,0" -> [0.0, 1.0, 0.0]"""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated point: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("a point needs at least one coordinate")
    return values


def _seed(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from None
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("the seed must fit in an unsigned 64-bit integer")
    return seed


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def coefficient_overrides(pairs: Sequence[str]) -> Dict[str, str]:
    """["b1=cos(t)"] -> {"b1": "cos(t)"}"""
    overrides: Dict[str, str] = {}
    for pair in pairs:
        name, sep, expr = pair.partition("=")
        if not sep or not name.strip() or not expr.strip():
            raise UsageException(f"--coeff expects NAME=EXPR, got {pair!r}")
        overrides[name.strip()] = expr.strip()
    return overrides


def normalize_argv(argv: Sequence[str]) -> List[str]:
    """Glue point flags to their values so negative points such as -1,-2 parse"""
    result: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in POINT_FLAGS:
            value = next(tokens, None)
            result.append(token if value is None else f"{token}={value}")
        else:
            result.append(token)
    return result


def common_options() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=_seed, help="seed of the sampling generator")
    parser.add_argument("--trials", type=_positive_int, help="samples per zero test")
    parser.add_argument("--tol", type=_positive_float, help="zero-test tolerance")
    parser.add_argument("--format", choices=FORMATS, default="text", help="output format")
    parser.add_argument("--load", metavar="FILE", help="load a user system from JSON instead of the registry")
    parser.add_argument("--output-dir", help="directory for CSV, JSON and the report cache")
    parser.add_argument("--log-level", help="logging level, e.g. INFO or DEBUG")
    return parser
