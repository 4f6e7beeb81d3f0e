"""
CLI commands
"""

from . import integrate, report, verify

__all__ = ['integrate', 'report', 'verify']
