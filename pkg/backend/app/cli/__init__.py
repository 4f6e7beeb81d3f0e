"""
Command-line interface: verify, integrate and report
"""

from .options import coefficient_overrides, normalize_argv, parse_point
from .parser import build_parser

__all__ = ['build_parser', 'coefficient_overrides', 'normalize_argv', 'parse_point']
