"""
k-symplectic structures: symbolic closedness and sampled joint nondegeneracy
"""

import logging
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field
from scipy.linalg import svdvals

from app.core.config import settings
from app.core.exceptions import (
    DegenerateAtException,
    NotClosedException,
    PreconditionFailedException,
    UndefinedAtPointException,
)
from app.expr import DomainBox, ZeroTest
from app.geom import Chart, TwoForm, closedness_defect, require_same_chart

logger = logging.getLogger(__name__)

Point = Union[Mapping[str, float], Sequence[float]]


class StructureReport(BaseModel):
    """Outcome of validating a family of two-forms"""

    k: int
    dimension: int
    closed: List[bool]
    failing_triples: List[Optional[Tuple[int, int, int]]]
    samples: int
    min_relative_singular_value: Optional[float] = None
    degenerate_point: Optional[List[float]] = None
    dimension_condition_holds: bool
    valid: bool
    notes: List[str] = Field(default_factory=list)


@dataclass(frozen=True)
class KSymplecticStructure:
    chart: Chart
    forms: Tuple[TwoForm, ...]
    report: StructureReport

    @property
    def k(self) -> int:
        return len(self.forms)


def numeric_rank(matrix: np.ndarray, threshold: Optional[float] = None) -> Tuple[int, float]:
    threshold = settings.RANK_THRESHOLD if threshold is None else threshold
    singular = svdvals(matrix)
    largest = float(singular.max()) if singular.size else 0.0
    if largest == 0.0:
        return 0, 0.0
    rank = int(np.sum(singular > threshold * largest))
    return rank, float(singular.min() / largest)


def _values(chart: Chart, p: Point) -> List[float]:
    if isinstance(p, Mapping):
        return [float(p[name]) for name in chart.symbols]
    return list(chart.point(p).values())


def kernel_dimension_at(omega: TwoForm, p: Point, threshold: Optional[float] = None) -> int:
    """n minus the numeric rank of the coefficient matrix at p"""
    matrix = omega.matrix_function()(_values(omega.chart, p))
    rank, _ = numeric_rank(matrix, threshold)
    return omega.chart.dimension - rank


def validate_structure(
    forms: Sequence[TwoForm],
    dom: Optional[DomainBox] = None,
    samples: Optional[int] = None,
    tester: Optional[ZeroTest] = None,
    raise_on_failure: bool = True,
) -> KSymplecticStructure:
    """Validate k closed two-forms with trivial joint kernel.

    Args:
        forms: The forms, all on one chart.
        dom: Sampling domain; the chart's domain when omitted.
        samples: Number of points for the nondegeneracy check.
        tester: Zero test whose generator also drives point sampling.
        raise_on_failure: Raise on the first failure instead of reporting it.

    Returns:
        The structure with its validation report.
    """
    if not forms:
        raise PreconditionFailedException("A k-symplectic structure needs k >= 1 forms")
    chart = require_same_chart(*forms)
    dom = dom or chart.domain
    samples = settings.STRUCTURE_SAMPLES if samples is None else samples
    if samples < 1:
        raise PreconditionFailedException("samples must be at least 1")
    tester = tester or ZeroTest()
    n, k = chart.dimension, len(forms)
    notes: List[str] = []

    closed: List[bool] = []
    failing: List[Optional[Tuple[int, int, int]]] = []
    for index, omega in enumerate(forms):
        triple = closedness_defect(omega, tester)
        if triple is not None and raise_on_failure:
            raise NotClosedException(index, triple)
        closed.append(triple is None)
        failing.append(triple)

    dimension_ok = n % (k + 1) == 0
    if not dimension_ok:
        message = f"dim {n} is not a multiple of k+1={k + 1}; only the joint-kernel condition is enforced"
        logger.warning(message)
        notes.append(message)

    matrices = [omega.matrix_function() for omega in forms]
    worst = 1.0
    degenerate_point: Optional[List[float]] = None
    accepted = 0
    attempts = 0
    while accepted < samples:
        attempts += 1
        if attempts > settings.ZERO_TEST_MAX_REJECTIONS_FACTOR * samples:
            raise PreconditionFailedException("Could not evaluate the forms at enough sample points")
        point = dom.draw(tester.rng, chart.symbols)
        values = [point[name] for name in chart.symbols]
        try:
            stacked = np.vstack([matrix(values) for matrix in matrices])
        except UndefinedAtPointException:
            continue
        accepted += 1
        rank, ratio = numeric_rank(stacked)
        worst = min(worst, ratio)
        if rank < n:
            logger.debug("Joint kernel is nontrivial at %s", values)
            if raise_on_failure:
                raise DegenerateAtException(values)
            degenerate_point = values
            break

    valid = all(closed) and degenerate_point is None
    report = StructureReport(
        k=k,
        dimension=n,
        closed=closed,
        failing_triples=failing,
        samples=accepted,
        min_relative_singular_value=worst,
        degenerate_point=degenerate_point,
        dimension_condition_holds=dimension_ok,
        valid=valid,
        notes=notes,
    )
    logger.info("Validated %d-symplectic structure on %s: valid=%s", k, chart.symbols, valid)
    return KSymplecticStructure(chart, tuple(forms), report)
