"""
Structure constants by sampled least squares and symbolic certification, and
the Lie closure of a set of generating fields
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import lstsq

from app.core.config import settings
from app.core.exceptions import (
    DimensionExceededException,
    LieAlgebraNotClosedException,
    PreconditionFailedException,
    RankDeficientSamplesException,
    UndefinedAtPointException,
)
from app.expr import Const, ZeroTest
from app.geom import Chart, VectorField, lie_bracket, require_same_chart
from app.ksymp import numeric_rank

from .model import Constants, LieAlgebraModel

logger = logging.getLogger(__name__)


def sample_points(
    chart: Chart,
    fields: Sequence[VectorField],
    count: int,
    tester: ZeroTest,
) -> List[List[float]]:
    """Draw points of the chart domain where every field evaluates"""
    compiled = [X.compiled() for X in fields]
    points: List[List[float]] = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > settings.ZERO_TEST_MAX_REJECTIONS_FACTOR * count:
            raise RankDeficientSamplesException(detail="Fields undefined at too many sampled points")
        drawn = chart.domain.draw(tester.rng, chart.symbols)
        values = [drawn[name] for name in chart.symbols]
        try:
            for field in compiled:
                field(values)
        except UndefinedAtPointException:
            continue
        points.append(values)
    return points


def stacked_values(fields: Sequence[VectorField], points: Sequence[Sequence[float]]) -> np.ndarray:
    """Column gamma holds X_gamma evaluated at every point, stacked"""
    if not fields:
        return np.zeros((0, 0))
    columns = []
    for X in fields:
        compiled = X.compiled()
        columns.append(np.concatenate([compiled(p) for p in points]))
    return np.column_stack(columns)


def _rounded(solution: np.ndarray, denominator: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(float(value)).limit_denominator(denominator) for value in solution)


def certify_expansion(
    target: VectorField,
    basis: Sequence[VectorField],
    coefficients: Sequence[Fraction],
    tester: ZeroTest,
) -> bool:
    residual = target
    for c, X in zip(coefficients, basis):
        if c != 0:
            residual = residual - X.scaled(Const(c))
    return residual.vanishes(tester)


def expand_in_basis(
    target: VectorField,
    basis: Sequence[VectorField],
    matrix: np.ndarray,
    points: Sequence[Sequence[float]],
    tester: ZeroTest,
) -> Optional[Tuple[Fraction, ...]]:
    """Rational coefficients of target in the basis, or None if no certified expansion exists"""
    rhs = stacked_values([target], points)[:, 0]
    solution, *_ = lstsq(matrix, rhs)
    tried = set()
    for denominator in (settings.RATIONAL_DENOMINATOR, settings.RATIONAL_DENOMINATOR_RETRY):
        coefficients = _rounded(solution, denominator)
        if coefficients in tried:
            continue
        tried.add(coefficients)
        if certify_expansion(target, basis, coefficients, tester):
            return coefficients
        logger.debug("Expansion %s rejected at denominator %d", coefficients, denominator)
    return None


def structure_constants(
    basis: Sequence[VectorField],
    tester: Optional[ZeroTest] = None,
) -> LieAlgebraModel:
    """Recover exact structure constants of a basis closing under the bracket.

    Args:
        basis: Linearly independent fields on one chart.
        tester: Zero test for certification; its generator also drives sampling.

    Returns:
        The certified model.

    Raises:
        LieAlgebraNotClosedException: Some bracket has no certified expansion.
        RankDeficientSamplesException: The basis is dependent at the sampled points.
    """
    if not basis:
        raise PreconditionFailedException("structure_constants needs a nonempty basis")
    chart = require_same_chart(*basis)
    tester = tester or ZeroTest()
    r = len(basis)
    points = sample_points(chart, basis, r + 3, tester)
    matrix = stacked_values(basis, points)
    rank, _ = numeric_rank(matrix)
    if rank < r:
        raise RankDeficientSamplesException(detail=f"rank {rank} < {r} over {len(points)} points")

    zero = tuple(Fraction(0) for _ in range(r))
    table = [[zero for _ in range(r)] for _ in range(r)]
    certificate = {}
    for alpha in range(r):
        for beta in range(alpha + 1, r):
            bracket = lie_bracket(basis[alpha], basis[beta])
            coefficients = expand_in_basis(bracket, basis, matrix, points, tester)
            if coefficients is None:
                raise LieAlgebraNotClosedException((alpha, beta))
            table[alpha][beta] = coefficients
            table[beta][alpha] = tuple(-c for c in coefficients)
            certificate[(alpha, beta)] = True

    constants: Constants = tuple(tuple(row) for row in table)
    model = LieAlgebraModel(tuple(basis), constants, certificate)
    logger.info("Structure constants recovered for %d fields on %s", r, chart.symbols)
    return model


def lie_closure(
    generators: Sequence[VectorField],
    max_dim: Optional[int] = None,
    tester: Optional[ZeroTest] = None,
) -> LieAlgebraModel:
    """Smallest Lie algebra containing the generators, if of dimension <= max_dim.

    Brackets are appended when they raise the sampled numeric rank, or when a
    claimed linear dependence fails symbolic certification.

    Raises:
        DimensionExceededException: The span grows past max_dim.
    """
    if not generators:
        raise PreconditionFailedException("lie_closure needs at least one generator")
    max_dim = settings.MAX_LIE_DIM if max_dim is None else max_dim
    if max_dim < len(generators):
        raise PreconditionFailedException(f"max_dim={max_dim} is below the generator count {len(generators)}")
    chart = require_same_chart(*generators)
    tester = tester or ZeroTest()
    points = sample_points(chart, generators, max_dim + 3, tester)

    span: List[VectorField] = []

    def admit(candidate: VectorField) -> bool:
        if candidate.vanishes(tester):
            return False
        if span:
            current = stacked_values(span, points)
            extended = np.column_stack([current, stacked_values([candidate], points)])
            if numeric_rank(extended)[0] == numeric_rank(current)[0]:
                if expand_in_basis(candidate, span, current, points, tester) is not None:
                    return False
                logger.debug("Numeric dependence of %s not confirmed symbolically", candidate.label)
        if len(span) >= max_dim:
            raise DimensionExceededException(max_dim)
        span.append(candidate)
        return True

    for X in generators:
        admit(X)

    done = 0
    while done < len(span):
        newest = span[done]
        for earlier in list(span[:done]):
            admit(lie_bracket(earlier, newest).relabeled(f"[{earlier.label},{newest.label}]"))
        done += 1

    logger.info("Lie closure of %d generators has dimension %d", len(generators), len(span))
    return structure_constants(span, tester)
