"""
Integration Service
Integrates example systems, measures invariant drift and writes trajectory files
"""

import asyncio
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np

from app.core.config import settings
from app.core.exceptions import LeftDomainException, NonFiniteStateException, UsageException
from app.core.logging import LoggerMixin
from app.expr import Expr, Mul
from app.models import IntegrationReport
from app.motion import Trajectory, check_constant, integrate, superposition_check
from app.registry import ExampleSystem
from app.utils.file_handler import FileHandler


class IntegrationService(LoggerMixin):
    """Service running RK4 integrations of t-dependent Lie systems"""

    def __init__(self, file_handler: Optional[FileHandler] = None, seed: Optional[int] = None):
        self.file_handler = file_handler or FileHandler()
        self.seed = settings.DEFAULT_SEED if seed is None else seed

    def _initial_points(
        self,
        example: ExampleSystem,
        x0: Optional[Sequence[float]],
        x0b: Sequence[Sequence[float]],
        copies: int,
    ) -> List[List[float]]:
        x0 = list(x0) if x0 else list(example.record.x0)
        if not x0:
            raise UsageException(f"{example.id} has no default initial point; pass --x0")
        others = [list(p) for p in x0b]
        if copies == 2 and not others and example.record.x0b:
            others = [list(example.record.x0b)]
        points = [x0, *others]
        if len(points) != copies:
            raise UsageException(f"{copies} copies need {copies - 1} --x0b points, got {len(others)}")
        for point in points:
            if len(point) != example.chart.dimension:
                raise UsageException(
                    f"Initial point {point} has {len(point)} coordinates; {example.id} needs {example.chart.dimension}"
                )
        return points

    def _write_partial(self, example_id: str, e: Exception) -> None:
        trajectory = getattr(e, "trajectory", None)
        if isinstance(trajectory, Trajectory) and len(trajectory):
            path = trajectory.to_csv(f"{example_id}_trajectory_partial.csv", self.file_handler)
            self.logger.warning(f"Partial trajectory up to the failure written to {path}")

    async def _run(
        self,
        example: ExampleSystem,
        start: Sequence[float],
        copies: int,
        t1: Optional[float],
        step: Optional[float],
        coefficients: Optional[Mapping[str, str]],
    ) -> Trajectory:
        F = example.t_dependent_field(coefficients, copies)
        try:
            return await asyncio.to_thread(integrate, F, start, None, t1, step, example.id, self.seed)
        except (LeftDomainException, NonFiniteStateException) as e:
            self.logger.error(f"Integration of {example.id} stopped: {e.message}")
            self._write_partial(example.id, e)
            raise

    async def integrate(
        self,
        example: ExampleSystem,
        x0: Optional[Sequence[float]] = None,
        x0b: Sequence[Sequence[float]] = (),
        t1: Optional[float] = None,
        step: Optional[float] = None,
        coefficients: Optional[Mapping[str, str]] = None,
        prolong: Optional[int] = None,
        invariants: bool = False,
        tol: Optional[float] = None,
    ) -> IntegrationReport:
        """
        Integrate an example, optionally on a diagonal prolongation

        Args:
            example: The compiled example
            x0: Initial point of the first copy; the registry default when omitted
            x0b: Initial points of the further copies
            t1: End time
            step: RK4 step
            coefficients: Overrides of the t-coefficients, name -> expression
            prolong: Number of copies; 1 + len(x0b) when omitted
            invariants: Measure the drift of the invariants registered for this copy count
            tol: Drift tolerance

        Returns:
            Report with the final state, drift results and written file paths
        """
        copies = prolong if prolong is not None else 1 + len(x0b)
        if not 1 <= copies <= settings.MAX_PROLONG:
            raise UsageException(f"--prolong must lie in [1, {settings.MAX_PROLONG}], got {copies}")
        points = self._initial_points(example, x0, x0b, copies)
        start = [value for point in points for value in point]

        self.logger.info(f"Integrating {example.id} on {copies} copies from {start}")
        trajectory = await self._run(example, start, copies, t1, step, coefficients)

        drifts = []
        if invariants:
            registered = example.invariants_for(copies)
            if not registered:
                self.logger.warning(f"{example.id} registers no invariants on {copies} copies")
            for invariant in registered:
                drift = check_constant(invariant.expr, trajectory, tol, invariant.label)
                self.logger.info(
                    f"{example.id}: {invariant.label} drift {drift.max_rel_deviation:.3e} "
                    f"({'ok' if drift.passed else 'exceeds tol'})"
                )
                drifts.append(drift)

        csv_path = trajectory.to_csv(f"{example.id}_trajectory.csv", self.file_handler)
        report = IntegrationReport(
            example_id=example.id,
            copies=copies,
            t0=trajectory.metadata.t0,
            t1=trajectory.metadata.t1,
            step=trajectory.metadata.step,
            steps=trajectory.metadata.steps,
            x0=start,
            coefficients=trajectory.metadata.coefficients,
            final_state=[float(v) for v in trajectory.final],
            csv_path=csv_path,
            drifts=drifts,
        )
        report.drift_path = self.file_handler.write_json(
            f"{example.id}_drift.json",
            report.model_dump(mode="json", include={"example_id", "copies", "t0", "t1", "step", "drifts"}),
        )
        return report

    async def superposition(
        self,
        example: ExampleSystem,
        reference: Optional[Sequence[float]] = None,
        particulars: Sequence[Sequence[float]] = (),
        t1: Optional[float] = None,
        step: Optional[float] = None,
        coefficients: Optional[Mapping[str, str]] = None,
        copies: Optional[int] = None,
        tol: Optional[float] = None,
    ) -> IntegrationReport:
        """
        Check that invariants over several copies stay constant when every copy
        runs as an independent solution of the base system

        The reference and the particular solutions integrate concurrently.
        """
        registered_copies = sorted({inv.copies for inv in example.record.invariants})
        if copies is None:
            if not registered_copies:
                raise UsageException(f"{example.id} registers no invariants")
            copies = registered_copies[-1]
        invariants = example.invariants_for(copies)
        if not invariants:
            raise UsageException(f"{example.id} registers no invariants on {copies} copies")

        reference = list(reference) if reference else list(example.record.x0)
        starts = [reference, *(list(p) for p in particulars)]
        if not particulars and example.record.x0b:
            starts.append(list(example.record.x0b))
        for point in starts:
            if len(point) != example.chart.dimension:
                raise UsageException(f"Initial point {point} does not match {example.chart.symbols}")

        self.logger.info(f"Integrating {len(starts)} solutions of {example.id} concurrently")
        trajectories = await asyncio.gather(
            *(self._run(example, start, 1, t1, step, coefficients) for start in starts)
        )

        degeneracy: Optional[Expr] = None
        if copies > 1 and example.record.product_exclusions:
            product = example.product(copies)
            factors = [product.parse(src) for src in example.record.product_exclusions]
            degeneracy = factors[0] if len(factors) == 1 else Mul(tuple(factors))

        result = await asyncio.to_thread(
            superposition_check, trajectories[1:], trajectories[0], invariants, tol, degeneracy
        )
        if result.degenerate:
            self.logger.warning(f"{example.id}: some pairings are degenerate and were excluded")

        reference_trajectory = trajectories[0]
        report = IntegrationReport(
            example_id=example.id,
            copies=copies,
            t0=reference_trajectory.metadata.t0,
            t1=reference_trajectory.metadata.t1,
            step=reference_trajectory.metadata.step,
            steps=reference_trajectory.metadata.steps,
            x0=reference,
            coefficients=reference_trajectory.metadata.coefficients,
            final_state=[float(v) for v in reference_trajectory.final],
            csv_path=reference_trajectory.to_csv(f"{example.id}_trajectory.csv", self.file_handler),
            superposition=result,
        )
        report.drift_path = self.file_handler.write_json(
            f"{example.id}_superposition.json", result.model_dump(mode="json")
        )
        return report


def final_states(report: IntegrationReport, dimension: int) -> Dict[int, List[float]]:
    """Split the final state of a prolonged run per copy"""
    state = np.asarray(report.final_state).reshape(report.copies, dimension)
    return {copy + 1: [float(v) for v in row] for copy, row in enumerate(state)}
