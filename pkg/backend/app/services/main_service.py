"""
Main Service - Orchestrator
Resolves examples and coordinates verification, integration and reporting
"""

from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Mapping, Optional, Sequence, Union

from app.core.exceptions import UsageException
from app.core.logging import LoggerMixin
from app.models import AggregateReport, IntegrationReport, Suite, VerificationReport
from app.registry import ExampleSystem, get_example, load_example
from app.utils.file_handler import FileHandler

from .integration import IntegrationService
from .report import ReportService
from .verification import VerificationService

ProgressCallback = Callable[[float, str], None]


class MainService(LoggerMixin):
    """
    Orchestrator for the toolkit commands
    Every command resolves its example, runs a service and caches the result
    """

    def __init__(
        self,
        output_dir: Optional[Union[str, Path]] = None,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        tol: Optional[float] = None,
    ):
        self.file_handler = FileHandler(output_dir)
        self.seed = seed
        self.trials = trials
        self.tol = tol

        self.verifier = VerificationService(seed, trials, tol)
        self.integrator = IntegrationService(self.file_handler, seed)
        self.reporter = ReportService(self.file_handler)

        self.progress_callback: Optional[ProgressCallback] = None
        self.logger.debug(f"MainService ready, output in {self.file_handler.output_dir}")

    def set_progress_callback(self, callback: Optional[ProgressCallback]) -> None:
        self.progress_callback = callback

    def _report_progress(self, progress: float, message: str) -> None:
        if self.progress_callback:
            self.progress_callback(progress, message)

    def resolve_example(self, example_id: Optional[str] = None, load: Optional[Union[str, Path]] = None) -> ExampleSystem:
        """A registered example by id, or a user system loaded from JSON"""
        if load is not None:
            example = load_example(load)
            if example_id and example_id != example.id:
                self.logger.info(f"Loaded system {example.id} stands in for {example_id}")
            return example
        if not example_id:
            raise UsageException("An example id or --load is required")
        return get_example(example_id)

    async def verify(
        self,
        example_id: Optional[str],
        suite: Union[Suite, str] = Suite.ALL,
        load: Optional[Union[str, Path]] = None,
    ) -> VerificationReport:
        """
        Run a verification suite and cache the result

        Args:
            example_id: Registered example id
            suite: Suite name
            load: Path of a user system replacing the registered example

        Returns:
            The verification report
        """
        try:
            suite = Suite(suite)
        except ValueError:
            raise UsageException(f"Unknown suite {suite}; expected one of {[s.value for s in Suite]}") from None
        example = self.resolve_example(example_id, load)

        start_time = datetime.now()
        self._report_progress(0, f"Verifying {example.id} ({suite.value})")
        report = await self.verifier.verify(example, suite)
        self.reporter.record_verification(report)
        elapsed = (datetime.now() - start_time).total_seconds()
        self._report_progress(100, f"Verified {example.id} in {elapsed:.2f}s")
        return report

    async def integrate(
        self,
        example_id: Optional[str],
        load: Optional[Union[str, Path]] = None,
        superposition: bool = False,
        x0: Optional[Sequence[float]] = None,
        x0b: Sequence[Sequence[float]] = (),
        coefficients: Optional[Mapping[str, str]] = None,
        **kwargs: Any,
    ) -> IntegrationReport:
        """
        Integrate an example and cache the result

        ``kwargs`` go to the integration service: t1, step, prolong,
        invariants and tol for a plain run; t1, step and tol for a
        superposition run.
        """
        example = self.resolve_example(example_id, load)
        self._report_progress(0, f"Integrating {example.id}")
        if superposition:
            options = {key: kwargs[key] for key in ("t1", "step", "tol") if key in kwargs}
            report = await self.integrator.superposition(example, x0, x0b, coefficients=coefficients, **options)
        else:
            report = await self.integrator.integrate(example, x0, x0b, coefficients=coefficients, **kwargs)
        self.reporter.record_integration(report)
        self._report_progress(100, f"Integrated {example.id}: {report.steps} steps")
        return report

    async def report(self, run_all: bool = False, show_progress: bool = False) -> AggregateReport:
        if run_all:
            self._report_progress(0, "Running every suite for every example")
            return await self.reporter.run_all(self.seed, self.trials, self.tol, show_progress)
        return self.reporter.summarize()
