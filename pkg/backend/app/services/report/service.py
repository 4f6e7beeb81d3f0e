"""
Report Service
Caches verification and integration results and renders reports
"""

import asyncio
import json
from typing import Any, Dict, List, Optional

from tqdm import tqdm

from app.core.exceptions import ToolkitException
from app.core.logging import LoggerMixin
from app.models import (
    FAIL_MARK,
    PASS_MARK,
    AggregateReport,
    ExampleSummary,
    IntegrationReport,
    Suite,
    SuiteReport,
    VerificationReport,
)
from app.registry import ExampleSystem, example_ids, get_example
from app.utils.file_handler import FileHandler

from ..integration import IntegrationService, final_states
from ..verification import VerificationService

NO_RESULTS = "no results"
FORMATS = ("text", "json")


def _yes_no(value: Optional[bool]) -> str:
    if value is None:
        return "-"
    return "yes" if value else "no"


class ReportService(LoggerMixin):
    """Service for the report cache and report rendering"""

    def __init__(self, file_handler: Optional[FileHandler] = None):
        self.file_handler = file_handler or FileHandler()

    # Cache

    def load(self) -> Dict[str, Any]:
        return self.file_handler.load_report_cache()

    def record_verification(self, report: VerificationReport) -> None:
        cache = self.load()
        entry = cache.setdefault(report.example_id, {})
        suites = entry.setdefault("verification", {})
        for suite in report.suites:
            suites[suite.suite.value] = suite.model_dump(mode="json")
        self.file_handler.save_report_cache(cache)
        self.logger.debug(f"Cached {len(report.suites)} suites for {report.example_id}")

    def record_integration(self, report: IntegrationReport) -> None:
        cache = self.load()
        cache.setdefault(report.example_id, {})["integration"] = report.model_dump(mode="json")
        self.file_handler.save_report_cache(cache)

    # Aggregation

    def summarize(self, cache: Optional[Dict[str, Any]] = None) -> AggregateReport:
        """One summary row per cached example, registered examples first in registry order"""
        cache = self.load() if cache is None else cache
        registered = [eid for eid in example_ids() if eid in cache]
        extra = sorted(eid for eid in cache if eid not in example_ids())
        rows = []
        for example_id in registered + extra:
            try:
                rows.append(self._summary(example_id, cache[example_id]))
            except (ValueError, TypeError, AttributeError) as e:
                self.logger.warning(f"Skipping malformed cache entry for {example_id}: {e}")
        return AggregateReport(examples=rows)

    def _summary(self, example_id: str, entry: Dict[str, Any]) -> ExampleSummary:
        suites = {
            Suite(name): SuiteReport.model_validate(data)
            for name, data in entry.get("verification", {}).items()
        }
        checks = [check for suite in suites.values() for check in suite.checks]

        structure = suites.get(Suite.STRUCTURE)
        structure_valid = structure.checks[0].passed if structure and structure.checks else None
        algebra = suites.get(Suite.ALGEBRA)
        constants_match = (
            all(c.passed for c in algebra.checks if c.name.startswith("[")) if algebra else None
        )

        max_drift = None
        drift_passed = None
        if "integration" in entry:
            integration = IntegrationReport.model_validate(entry["integration"])
            drifts = list(integration.drifts)
            if integration.superposition is not None:
                drifts += [d for p in integration.superposition.pairings for d in p.drifts]
            if drifts:
                max_drift = max(d.max_rel_deviation for d in drifts)
            drift_passed = integration.passed

        passed = all(c.passed for c in checks) and drift_passed is not False
        return ExampleSummary(
            example_id=example_id,
            structure_valid=structure_valid,
            identities_passed=sum(c.passed for c in checks),
            identities_total=len(checks),
            constants_match=constants_match,
            max_drift=max_drift,
            drift_passed=drift_passed,
            passed=passed,
        )

    async def run_all(
        self,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        tol: Optional[float] = None,
        show_progress: bool = False,
    ) -> AggregateReport:
        """
        Run every suite and the default integration for all registered examples

        Examples run concurrently in worker threads; results are cached and
        emitted in registry order.
        """
        verifier = VerificationService(seed, trials, tol)
        integrator = IntegrationService(self.file_handler, seed)

        async def run_one(example: ExampleSystem) -> Dict[str, Any]:
            result: Dict[str, Any] = {"verification": await verifier.verify(example, Suite.ALL)}
            copies = max((inv.copies for inv in example.record.invariants), default=0)
            if copies and example.record.x0:
                try:
                    result["integration"] = await integrator.integrate(
                        example, prolong=copies, invariants=True
                    )
                except ToolkitException as e:
                    self.logger.error(f"Integration of {example.id} failed: {e.message}")
            return result

        ids = example_ids()
        tasks = [asyncio.ensure_future(run_one(get_example(eid))) for eid in ids]
        results: Dict[str, Dict[str, Any]] = {}
        with tqdm(total=len(tasks), desc="examples", disable=not show_progress) as progress:
            for finished in asyncio.as_completed(tasks):
                outcome = await finished
                results[outcome["verification"].example_id] = outcome
                progress.update(1)

        for example_id in ids:
            self.record_verification(results[example_id]["verification"])
            if "integration" in results[example_id]:
                self.record_integration(results[example_id]["integration"])
        return self.summarize()

    # Rendering

    def render_aggregate(self, report: AggregateReport, fmt: str = "text") -> str:
        if fmt == "json":
            return report.model_dump_json(indent=2)
        if not report.examples:
            return NO_RESULTS
        blocks = []
        for row in report.examples:
            drift = "-" if row.max_drift is None else f"{row.max_drift:.3e} ({'ok' if row.drift_passed else 'exceeds tol'})"
            blocks.append("\n".join([
                row.example_id,
                f"  structure valid      {_yes_no(row.structure_valid)}",
                f"  identities           {row.identities_passed}/{row.identities_total}",
                f"  constants match      {_yes_no(row.constants_match)}",
                f"  max invariant drift  {drift}",
                f"  status               {'PASS' if row.passed else 'FAIL'}",
            ]))
        return "\n\n".join(blocks)

    def render_verification(self, report: VerificationReport, fmt: str = "text") -> str:
        if fmt == "json":
            return report.model_dump_json(indent=2)
        lines: List[str] = [f"{report.example_id} (seed {report.seed}, {report.trials} trials, tol {report.tol:g})"]
        for suite in report.suites:
            lines.append(f"== {suite.suite.value} ==")
            lines.extend(f"  {check.line()}" for check in suite.checks)
        passed = sum(check.passed for check in report.checks)
        lines.append(f"{passed}/{len(report.checks)} passed")
        return "\n".join(lines)

    def render_integration(self, report: IntegrationReport, fmt: str = "text") -> str:
        if fmt == "json":
            return report.model_dump_json(indent=2)
        lines = [
            f"{report.example_id}: {report.steps} RK4 steps of {report.step:g} on [{report.t0:g}, {report.t1:g}], "
            f"{report.copies} cop{'y' if report.copies == 1 else 'ies'}",
            f"  coefficients  {', '.join(report.coefficients)}",
        ]
        if report.copies > 1 and report.superposition is None:
            dimension = len(report.final_state) // report.copies
            for copy, state in final_states(report, dimension).items():
                lines.append(f"  final copy {copy}  {json.dumps(state)}")
        else:
            lines.append(f"  final state   {json.dumps(report.final_state)}")
        for drift in report.drifts:
            mark = PASS_MARK if drift.passed else FAIL_MARK
            lines.append(f"  {drift.label} drift {drift.max_rel_deviation:.3e} {mark}")
        if report.superposition is not None:
            for pairing in report.superposition.pairings:
                mark = PASS_MARK if pairing.passed else FAIL_MARK
                worst = max((d.max_rel_deviation for d in pairing.drifts), default=0.0)
                flag = " degenerate" if pairing.degenerate else ""
                lines.append(f"  {'+'.join(pairing.copies)} max drift {worst:.3e}{flag} {mark}")
        if report.csv_path:
            lines.append(f"  trajectory    {report.csv_path}")
        if report.drift_path:
            lines.append(f"  drift report  {report.drift_path}")
        return "\n".join(lines)
