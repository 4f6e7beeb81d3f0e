"""
Stability of distributions under a Lie algebra of vector fields
"""

import logging
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import lstsq

from app.core.config import settings
from app.core.exceptions import PreconditionFailedException, RankDropException
from app.expr import ZeroTest
from app.geom import VectorField, lie_bracket, require_same_chart
from app.ksymp import numeric_rank

from .closure import expand_in_basis, sample_points, stacked_values

logger = logging.getLogger(__name__)


def _pointwise(fields: Sequence[VectorField]) -> Callable[[Sequence[float]], np.ndarray]:
    compiled = [X.compiled() for X in fields]

    def matrix(point: Sequence[float]) -> np.ndarray:
        return np.column_stack([f(point) for f in compiled])

    return matrix


def is_stable_distribution(
    V: Sequence[VectorField],
    D: Sequence[VectorField],
    samples: Optional[int] = None,
    tol: Optional[float] = None,
    tester: Optional[ZeroTest] = None,
) -> bool:
    """Decide whether [X, Y] lies in span(D) for every X in V and Y in D.

    A bracket with a certified expansion over D with constant coefficients is
    accepted outright. Otherwise the bracket is expanded by least squares at
    each sample point and must leave a residual within tol relative to its
    own size.

    Args:
        V: Fields acting on the distribution.
        D: Fields spanning the distribution.
        samples: Number of sample points.
        tol: Relative residual tolerance for the pointwise test.
        tester: Zero test; its generator also drives sampling.

    Raises:
        RankDropException: D does not have constant rank on the samples.
    """
    if not V or not D:
        raise PreconditionFailedException("Both V and D must be nonempty")
    chart = require_same_chart(*V, *D)
    samples = settings.STABILITY_SAMPLES if samples is None else samples
    tol = settings.STABILITY_TOL if tol is None else tol
    tester = tester or ZeroTest()

    brackets = [lie_bracket(X, Y) for X in V for Y in D]
    points = sample_points(chart, [*D, *brackets], samples, tester)

    d_matrix = _pointwise(D)
    ranks = [numeric_rank(d_matrix(p))[0] for p in points]
    expected = max(ranks)
    for p, rank in zip(points, ranks):
        if rank != expected:
            raise RankDropException(p)

    stacked = stacked_values(D, points)
    for Z in brackets:
        if Z.vanishes(tester):
            continue
        if expand_in_basis(Z, D, stacked, points, tester) is not None:
            continue
        z_vector = Z.compiled()
        for p in points:
            matrix = d_matrix(p)
            target = z_vector(p)
            coefficients, *_ = lstsq(matrix, target)
            residual = float(np.linalg.norm(matrix @ coefficients - target))
            if residual > tol * (1.0 + float(np.linalg.norm(target))):
                logger.info("Bracket %s leaves the distribution at %s", Z.label or Z, p)
                return False
    return True
