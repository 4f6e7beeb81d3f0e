"""
Constants of motion along sampled trajectories
"""

import logging
from typing import Optional

import numpy as np
from pydantic import BaseModel

from app.core.config import settings
from app.core.exceptions import PreconditionFailedException
from app.expr import TIME_SYMBOL, Expr, compile_expr

from .integrator import Trajectory

logger = logging.getLogger(__name__)


class DriftReport(BaseModel):
    """max_j |f(x_j) - f(x_0)| relative to max(1, |f(x_0)|)"""

    label: str = ""
    initial_value: float
    max_abs_deviation: float
    max_rel_deviation: float
    tol: float
    samples: int
    passed: bool


def values_along(f: Expr, traj: Trajectory) -> np.ndarray:
    """f evaluated at every sample; t is bound to the sample time"""
    symbols = (*traj.chart.symbols, TIME_SYMBOL)
    compiled = compile_expr(f, symbols)
    return np.array([compiled([*x, t]) for t, x in zip(traj.times, traj.points)])


def drift_of(values: np.ndarray, tol: float, label: str = "") -> DriftReport:
    if values.size == 0:
        raise PreconditionFailedException("No samples to measure drift on")
    initial = float(values[0])
    deviation = float(np.max(np.abs(values - initial)))
    relative = deviation / max(1.0, abs(initial))
    return DriftReport(
        label=label,
        initial_value=initial,
        max_abs_deviation=deviation,
        max_rel_deviation=relative,
        tol=tol,
        samples=int(values.size),
        passed=relative <= tol,
    )


def check_constant(f: Expr, traj: Trajectory, tol: Optional[float] = None, label: str = "") -> DriftReport:
    """Measure how far f drifts along traj.

    Raises:
        UndefinedAtPointException: f cannot be evaluated at some sample.
    """
    tol = settings.DRIFT_TOL if tol is None else tol
    report = drift_of(values_along(f, traj), tol, label or str(f))
    if not report.passed:
        logger.info("Drift of %s is %.3e (tol %.1e)", report.label, report.max_rel_deviation, tol)
    return report
