"""
Fixed-step RK4 integration of t-dependent fields
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from app.core.config import settings
from app.core.exceptions import (
    LeftDomainException,
    NonFiniteStateException,
    PreconditionFailedException,
    UndefinedAtPointException,
)
from app.geom import Chart
from app.utils.file_handler import FileHandler

from .system import TDependentField

logger = logging.getLogger(__name__)


class TrajectoryMetadata(BaseModel):
    method: str = "rk4"
    step: float
    steps: int
    t0: float
    t1: float
    system: str = ""
    seed: Optional[int] = None
    coefficients: List[str] = Field(default_factory=list)


@dataclass(frozen=True)
class Trajectory:
    """Samples (t_j, x_j) on a uniform grid"""

    chart: Chart
    times: np.ndarray
    points: np.ndarray
    metadata: TrajectoryMetadata

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.points[-1]

    def column(self, symbol: str) -> np.ndarray:
        return self.points[:, self.chart.index(symbol)]

    def point_at(self, j: int) -> Dict[str, float]:
        return self.chart.point(self.points[j])

    def to_rows(self) -> List[List[float]]:
        return [[float(t), *map(float, x)] for t, x in zip(self.times, self.points)]

    def to_csv(self, filename: str, handler: Optional[FileHandler] = None) -> str:
        handler = handler or FileHandler()
        return handler.write_csv(filename, ["t", *self.chart.symbols], self.to_rows())


def _trajectory(chart: Chart, times: List[float], points: List[np.ndarray], metadata: TrajectoryMetadata) -> Trajectory:
    return Trajectory(chart, np.asarray(times, dtype=float), np.vstack(points), metadata)


def integrate(
    F: TDependentField,
    x0: Sequence[float],
    t0: Optional[float] = None,
    t1: Optional[float] = None,
    step: Optional[float] = None,
    system: str = "",
    seed: Optional[int] = None,
) -> Trajectory:
    """Integrate dx/dt = X(t, x) with classical RK4.

    The step is adjusted to (t1 - t0) / N with N = round((t1 - t0) / step).
    The chart's exclusions are checked after every step; the box intervals
    only drive sampling and do not bound the motion.

    Args:
        F: The t-dependent field.
        x0: Initial point in chart order.
        t0: Start time.
        t1: End time, not before t0.
        step: Requested step size.
        system: Example id recorded in the metadata.
        seed: Seed recorded in the metadata.

    Returns:
        The sampled trajectory, including both endpoints.

    Raises:
        LeftDomainException: A state violates an exclusion or cannot be evaluated.
        NonFiniteStateException: A state is inf or nan.
    """
    t0 = settings.T0 if t0 is None else float(t0)
    t1 = settings.T1 if t1 is None else float(t1)
    step = settings.RK4_STEP if step is None else float(step)
    chart = F.chart
    if len(x0) != chart.dimension:
        raise PreconditionFailedException(f"x0 has {len(x0)} coordinates, chart has {chart.dimension}")
    if t1 < t0:
        raise PreconditionFailedException(f"t1={t1} precedes t0={t0}")
    if step <= 0:
        raise PreconditionFailedException("The step must be positive")

    x = np.asarray(x0, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NonFiniteStateException(t0)
    if not chart.domain.admits(chart.point(x)):
        raise LeftDomainException(t0, x)

    steps = 0 if t1 == t0 else max(1, int(round((t1 - t0) / step)))
    h = (t1 - t0) / steps if steps else 0.0
    metadata = TrajectoryMetadata(
        step=h,
        steps=steps,
        t0=t0,
        t1=t1,
        system=system,
        seed=seed,
        coefficients=[str(b) for b in F.coefficients],
    )
    rhs = F.evaluator()
    times = [t0]
    points = [x.copy()]

    for j in range(steps):
        t = t0 + j * h
        try:
            k1 = rhs(t, x)
            k2 = rhs(t + h / 2, x + h / 2 * k1)
            k3 = rhs(t + h / 2, x + h / 2 * k2)
            k4 = rhs(t + h, x + h * k3)
        except UndefinedAtPointException:
            logger.warning("RK4 stage undefined near t=%s", t)
            raise LeftDomainException(t, x, _trajectory(chart, times, points, metadata)) from None
        x_next = x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t_next = t0 + (j + 1) * h
        if not np.all(np.isfinite(x_next)):
            raise NonFiniteStateException(t_next, _trajectory(chart, times, points, metadata))
        if not chart.domain.admits(chart.point(x_next)):
            raise LeftDomainException(t_next, x, _trajectory(chart, times, points, metadata))
        x = x_next
        times.append(t_next)
        points.append(x.copy())

    logger.debug("Integrated %d RK4 steps of size %s on %s", steps, h, chart.symbols)
    return _trajectory(chart, times, points, metadata)
