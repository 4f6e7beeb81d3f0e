"""
Numerical checks of superposition-rule invariants along particular solutions
"""

import logging
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from app.core.config import settings
from app.core.exceptions import GridMismatchException, PreconditionFailedException, UndefinedAtPointException
from app.expr import Expr, compile_expr
from app.prolong import product_chart

from .drift import DriftReport, drift_of
from .integrator import Trajectory
from .invariants import LabeledExpr

logger = logging.getLogger(__name__)


class PairingReport(BaseModel):
    """Drift of every invariant for one choice of copies"""

    copies: List[str]
    drifts: List[DriftReport] = Field(default_factory=list)
    degenerate: bool = False
    degenerate_samples: int = 0
    passed: bool


class SuperpositionReport(BaseModel):
    tol: float
    pairings: List[PairingReport]
    degenerate: bool
    passed: bool


def _require_same_grid(trajectories: Sequence[Trajectory]) -> None:
    first = trajectories[0]
    for other in trajectories[1:]:
        if not first.chart.same_as(other.chart):
            raise GridMismatchException(detail=f"charts {first.chart.symbols} and {other.chart.symbols}")
        if len(other.times) != len(first.times) or not np.array_equal(other.times, first.times):
            raise GridMismatchException()


def _evaluate_all(f: Expr, symbols: Sequence[str], rows: np.ndarray) -> np.ndarray:
    compiled = compile_expr(f, symbols)
    values = np.empty(len(rows))
    for j, row in enumerate(rows):
        try:
            values[j] = compiled(row)
        except UndefinedAtPointException:
            values[j] = np.nan
    return values


def superposition_check(
    particulars: Sequence[Trajectory],
    reference: Trajectory,
    invariants: Sequence[LabeledExpr],
    tol: Optional[float] = None,
    degeneracy: Optional[Expr] = None,
    degeneracy_tol: Optional[float] = None,
) -> SuperpositionReport:
    """Check that invariants of (reference, particulars...) stay constant in t.

    The number of copies is read off the invariants' symbols: invariants over
    m copies of the base chart are evaluated on the reference followed by every
    choice of m-1 particular solutions. Samples where ``degeneracy`` is
    below ``degeneracy_tol`` in absolute value are excluded and flag the
    pairing as degenerate.

    Raises:
        GridMismatchException: The trajectories differ in chart or time grid.
    """
    tol = settings.DRIFT_TOL if tol is None else tol
    degeneracy_tol = settings.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    if not invariants:
        raise PreconditionFailedException("No invariants to check")
    _require_same_grid([reference, *particulars])

    base = reference.chart
    used = set().union(*(inv.expr.free_symbols for inv in invariants))
    copies = 1
    symbols = base.symbols
    while not used <= set(symbols):
        copies += 1
        if copies > len(particulars) + 1:
            raise PreconditionFailedException(
                f"Invariants use {sorted(used)}, beyond {len(particulars) + 1} copies of {base.symbols}"
            )
        symbols = product_chart(base, copies).symbols

    pairings: List[PairingReport] = []
    for chosen in combinations(range(len(particulars)), copies - 1):
        rows = np.hstack([reference.points, *(particulars[i].points for i in chosen)])
        mask = np.ones(len(rows), dtype=bool)
        if degeneracy is not None:
            margin = _evaluate_all(degeneracy, symbols, rows)
            mask = np.isfinite(margin)
            mask[mask] = np.abs(margin[mask]) >= degeneracy_tol
        names = ["reference", *(f"particular-{i + 1}" for i in chosen)]
        flagged = int(np.count_nonzero(~mask))

        drifts = []
        for inv in invariants:
            values = _evaluate_all(inv.expr, symbols, rows[mask]) if mask.any() else np.empty(0)
            finite = np.isfinite(values)
            flagged = max(flagged, int(np.count_nonzero(~finite)) + int(np.count_nonzero(~mask)))
            if finite.any():
                drifts.append(drift_of(values[finite], tol, inv.label))

        degenerate = flagged > 0
        if degenerate:
            logger.info("Pairing %s degenerate at %d samples", names, flagged)
        pairings.append(
            PairingReport(
                copies=names,
                drifts=drifts,
                degenerate=degenerate,
                degenerate_samples=flagged,
                passed=not degenerate and len(drifts) == len(invariants) and all(d.passed for d in drifts),
            )
        )

    return SuperpositionReport(
        tol=tol,
        pairings=pairings,
        degenerate=any(p.degenerate for p in pairings),
        passed=bool(pairings) and all(p.passed for p in pairings),
    )
