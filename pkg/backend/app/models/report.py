"""
Report models for verification, integration and the aggregate report
"""

from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.motion import DriftReport, SuperpositionReport

PASS_MARK = "✓"
FAIL_MARK = "✗"


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    ERROR = "error"


class Suite(str, Enum):
    STRUCTURE = "structure"
    HAMILTONIAN = "hamiltonian"
    ALGEBRA = "algebra"
    BRACKETS = "brackets"
    STABILITY = "stability"
    ALL = "all"

    @classmethod
    def expand(cls, suite: "Suite") -> List["Suite"]:
        if suite is cls.ALL:
            return [cls.STRUCTURE, cls.HAMILTONIAN, cls.ALGEBRA, cls.BRACKETS, cls.STABILITY]
        return [suite]


class CheckResult(BaseModel):
    """One identity with its verdict"""

    name: str
    status: CheckStatus
    detail: Optional[str] = None
    certificate: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASSED

    def line(self) -> str:
        mark = PASS_MARK if self.passed else FAIL_MARK
        suffix = f"  ({self.detail})" if self.detail and not self.passed else ""
        return f"{self.name} {mark}{suffix}"


class SuiteReport(BaseModel):
    example_id: str
    suite: Suite
    checks: List[CheckResult] = Field(default_factory=list)
    duration_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class VerificationReport(BaseModel):
    example_id: str
    seed: int
    trials: int
    tol: float
    suites: List[SuiteReport] = Field(default_factory=list)
    created_at: datetime = Field(default_factory=datetime.now)

    @property
    def checks(self) -> List[CheckResult]:
        return [check for suite in self.suites for check in suite.checks]

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    def suite(self, name: Suite) -> Optional[SuiteReport]:
        for report in self.suites:
            if report.suite is name:
                return report
        return None


class IntegrationReport(BaseModel):
    example_id: str
    copies: int
    t0: float
    t1: float
    step: float
    steps: int
    x0: List[float]
    coefficients: List[str]
    final_state: List[float]
    csv_path: Optional[str] = None
    drift_path: Optional[str] = None
    drifts: List[DriftReport] = Field(default_factory=list)
    superposition: Optional[SuperpositionReport] = None
    created_at: datetime = Field(default_factory=datetime.now)

    @property
    def passed(self) -> bool:
        drifts_ok = all(d.passed for d in self.drifts)
        return drifts_ok and (self.superposition is None or self.superposition.passed)


class ExampleSummary(BaseModel):
    """One row of the aggregate report"""

    example_id: str
    structure_valid: Optional[bool] = None
    identities_passed: int = 0
    identities_total: int = 0
    constants_match: Optional[bool] = None
    max_drift: Optional[float] = None
    drift_passed: Optional[bool] = None
    passed: bool


class AggregateReport(BaseModel):
    generated_at: datetime = Field(default_factory=datetime.now)
    examples: List[ExampleSummary] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.examples)
