"""
Domain boxes and the probabilistic zero test
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    DomainExhaustedException,
    PreconditionFailedException,
    UndefinedAtPointException,
)

from .calculus import rename, simplify
from .nodes import TIME_SYMBOL, Const, Expr, evaluate, evaluate_with_scale

logger = logging.getLogger(__name__)

DEFAULT_INTERVAL = (-2.0, 2.0)
TIME_INTERVAL = (0.0, 1.0)


@dataclass(frozen=True)
class DomainBox:
    """Sampling box with exclusion predicates.

    ``intervals`` maps symbols to closed intervals. Each exclusion expression
    must stay away from zero on admitted points. Symbols without an interval
    are sampled from DEFAULT_INTERVAL (``t`` from TIME_INTERVAL).
    """

    intervals: Mapping[str, Tuple[float, float]] = field(default_factory=dict)
    exclusions: Tuple[Expr, ...] = ()

    def __post_init__(self) -> None:
        for name, (low, high) in self.intervals.items():
            if not high > low:
                raise PreconditionFailedException(f"Interval for {name} has no length: [{low}, {high}]")
        object.__setattr__(self, "exclusions", tuple(self.exclusions))

    def interval(self, symbol: str) -> Tuple[float, float]:
        if symbol in self.intervals:
            return self.intervals[symbol]
        return TIME_INTERVAL if symbol == TIME_SYMBOL else DEFAULT_INTERVAL

    def sample(self, rng: np.random.Generator, symbols: Iterable[str]) -> Dict[str, float]:
        point = {}
        for name in sorted(set(symbols) | set(self.intervals)):
            low, high = self.interval(name)
            point[name] = float(rng.uniform(low, high))
        return point

    def admits(self, point: Mapping[str, float], margin: Optional[float] = None) -> bool:
        margin = settings.EXCLUSION_MARGIN if margin is None else margin
        for exclusion in self.exclusions:
            try:
                if abs(evaluate(exclusion, point)) < margin:
                    return False
            except UndefinedAtPointException:
                return False
        return True

    def draw(
        self,
        rng: np.random.Generator,
        symbols: Iterable[str] = (),
        max_attempts: int = 2500,
    ) -> Dict[str, float]:
        """Sample until a point passes every exclusion"""
        symbols = tuple(symbols)
        for _ in range(max_attempts):
            point = self.sample(rng, symbols)
            if self.admits(point):
                return point
        raise DomainExhaustedException(detail=f"{max_attempts} consecutive samples rejected")

    def renamed(self, mapping: Mapping[str, str]) -> "DomainBox":
        return DomainBox(
            intervals={mapping.get(name, name): bounds for name, bounds in self.intervals.items()},
            exclusions=tuple(rename(e, mapping) for e in self.exclusions),
        )

    def merged(self, other: "DomainBox") -> "DomainBox":
        intervals = dict(self.intervals)
        intervals.update(other.intervals)
        return DomainBox(intervals=intervals, exclusions=self.exclusions + other.exclusions)

    def with_exclusions(self, extra: Sequence[Expr]) -> "DomainBox":
        return DomainBox(intervals=dict(self.intervals), exclusions=self.exclusions + tuple(extra))


@dataclass
class ZeroTest:
    """Seeded sampling zero test shared by a verification run"""

    trials: int = field(default_factory=lambda: settings.ZERO_TEST_TRIALS)
    tol: float = field(default_factory=lambda: settings.ZERO_TEST_TOL)
    rng: np.random.Generator = field(
        default_factory=lambda: np.random.default_rng(settings.DEFAULT_SEED)
    )

    @classmethod
    def seeded(cls, seed: Optional[int] = None, trials: Optional[int] = None, tol: Optional[float] = None) -> "ZeroTest":
        return cls(
            trials=settings.ZERO_TEST_TRIALS if trials is None else trials,
            tol=settings.ZERO_TEST_TOL if tol is None else tol,
            rng=np.random.default_rng(settings.DEFAULT_SEED if seed is None else seed),
        )

    def __call__(self, e: Expr, dom: DomainBox) -> bool:
        return is_zero(e, dom, self.trials, self.tol, self.rng)

    def witness(self, e: Expr, dom: DomainBox) -> Optional[Dict[str, float]]:
        return find_nonzero_point(e, dom, self.trials, self.tol, self.rng)


def find_nonzero_point(
    e: Expr,
    dom: DomainBox,
    trials: Optional[int] = None,
    tol: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
) -> Optional[Dict[str, float]]:
    """Return a sampled point where ``e`` is clearly nonzero, or None.

    A point counts as nonzero when |e(p)| > tol * (1 + scale), with scale the
    largest absolute subterm value at p.
    """
    trials = settings.ZERO_TEST_TRIALS if trials is None else trials
    tol = settings.ZERO_TEST_TOL if tol is None else tol
    if trials < 1:
        raise PreconditionFailedException("trials must be at least 1")
    if tol <= 0:
        raise PreconditionFailedException("tol must be positive")
    rng = rng if rng is not None else np.random.default_rng(settings.DEFAULT_SEED)

    reduced = simplify(e)
    if isinstance(reduced, Const) and reduced.value == 0:
        return None

    symbols = set(reduced.free_symbols)
    for exclusion in dom.exclusions:
        symbols |= exclusion.free_symbols
    limit = settings.ZERO_TEST_MAX_REJECTIONS_FACTOR * trials

    accepted = 0
    rejected = 0
    while accepted < trials:
        point = dom.sample(rng, symbols)
        if dom.admits(point):
            try:
                value, scale = evaluate_with_scale(reduced, point)
            except UndefinedAtPointException:
                pass
            else:
                rejected = 0
                if abs(value) > tol * (1.0 + scale):
                    return point
                accepted += 1
                continue
        rejected += 1
        if rejected >= limit:
            raise DomainExhaustedException(detail=f"{rejected} consecutive samples rejected")
    return None


def is_zero(
    e: Expr,
    dom: DomainBox,
    trials: Optional[int] = None,
    tol: Optional[float] = None,
    rng: Optional[np.random.Generator] = None,
) -> bool:
    """Probabilistic test that ``e`` vanishes on ``dom``.

    Args:
        e: Expression to test.
        dom: Sampling box with exclusions.
        trials: Number of accepted sample points.
        tol: Relative tolerance.
        rng: Seeded generator; a fresh default-seeded one when omitted.

    Returns:
        True when the simplified expression is the zero constant or every
        sample is within tolerance.
    """
    return find_nonzero_point(e, dom, trials, tol, rng) is None
