"""
Verification Service Package
Identity suites for registered and loaded examples
"""

from .service import VerificationService

__all__ = ['VerificationService']
