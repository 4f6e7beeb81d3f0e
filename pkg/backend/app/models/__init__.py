"""
Report models
"""

from .report import (
    FAIL_MARK,
    PASS_MARK,
    AggregateReport,
    CheckResult,
    CheckStatus,
    ExampleSummary,
    IntegrationReport,
    Suite,
    SuiteReport,
    VerificationReport,
)

__all__ = [
    'FAIL_MARK',
    'PASS_MARK',
    'AggregateReport',
    'CheckResult',
    'CheckStatus',
    'ExampleSummary',
    'IntegrationReport',
    'Suite',
    'SuiteReport',
    'VerificationReport',
]
