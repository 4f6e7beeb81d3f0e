"""
Vector fields, one-forms and two-forms on a chart
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ChartMismatchException, ComponentCountMismatchException, PreconditionFailedException
from app.expr import (
    ONE,
    ZERO,
    Add,
    Const,
    Expr,
    Mul,
    Neg,
    ZeroTest,
    as_expr,
    compile_vector,
    differentiate,
    evaluate,
    simplify,
)

from .chart import Chart

Scalar = Union[Expr, int, Fraction]


def require_same_chart(*objects: "object") -> Chart:
    charts = [obj.chart for obj in objects]  # type: ignore[attr-defined]
    first = charts[0]
    for other in charts[1:]:
        if not first.same_as(other):
            raise ChartMismatchException(detail=f"{first.symbols} vs {other.symbols}")
    return first


def _parse_all(chart: Chart, sources: Iterable[Union[str, Expr]], params: Iterable[str] = ()) -> Tuple[Expr, ...]:
    params = tuple(params)
    return tuple(s if isinstance(s, Expr) else chart.parse(s, params) for s in sources)


@dataclass(frozen=True)
class VectorField:
    """X = sum_l X^l d/dx^l"""

    chart: Chart
    components: Tuple[Expr, ...]
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.chart.dimension:
            raise ComponentCountMismatchException(self.chart.dimension, len(self.components))

    @classmethod
    def from_strings(cls, chart: Chart, sources: Sequence[Union[str, Expr]], label: str = "") -> "VectorField":
        return cls(chart, _parse_all(chart, sources), label)

    @classmethod
    def zero(cls, chart: Chart) -> "VectorField":
        return cls(chart, (ZERO,) * chart.dimension, "0")

    @classmethod
    def coordinate(cls, chart: Chart, symbol: str) -> "VectorField":
        index = chart.index(symbol)
        components = tuple(ONE if i == index else ZERO for i in range(chart.dimension))
        return cls(chart, components, f"d/d{symbol}")

    def relabeled(self, label: str) -> "VectorField":
        return VectorField(self.chart, self.components, label)

    def simplified(self) -> "VectorField":
        return VectorField(self.chart, tuple(simplify(c) for c in self.components), self.label)

    def __add__(self, other: "VectorField") -> "VectorField":
        require_same_chart(self, other)
        return VectorField(
            self.chart,
            tuple(simplify(Add((a, b))) for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other: "VectorField") -> "VectorField":
        require_same_chart(self, other)
        return VectorField(
            self.chart,
            tuple(simplify(Add((a, Neg(b)))) for a, b in zip(self.components, other.components)),
        )

    def __neg__(self) -> "VectorField":
        return self.scaled(-1)

    def scaled(self, factor: Scalar) -> "VectorField":
        factor = as_expr(factor)
        return VectorField(self.chart, tuple(simplify(Mul((factor, c))) for c in self.components))

    def apply(self, f: Expr) -> Expr:
        """The derivation X(f) = sum_l X^l df/dx^l"""
        terms = [
            Mul((component, differentiate(f, name)))
            for component, name in zip(self.components, self.chart.symbols)
            if not (isinstance(component, Const) and component.value == 0)
        ]
        return simplify(Add(tuple(terms))) if terms else ZERO

    def at(self, point: Mapping[str, float]) -> np.ndarray:
        return np.array([evaluate(c, point) for c in self.components], dtype=float)

    def compiled(self, symbols: Optional[Sequence[str]] = None) -> Callable[[Sequence[float]], np.ndarray]:
        return compile_vector(self.components, symbols or self.chart.symbols)

    def vanishes(self, tester: Optional[ZeroTest] = None) -> bool:
        tester = tester or ZeroTest()
        return all(tester(c, self.chart.domain) for c in self.components)

    def equals(self, other: "VectorField", tester: Optional[ZeroTest] = None) -> bool:
        return (self - other).vanishes(tester)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class OneForm:
    """theta = sum_l theta_l dx^l"""

    chart: Chart
    coefficients: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if len(self.coefficients) != self.chart.dimension:
            raise ComponentCountMismatchException(self.chart.dimension, len(self.coefficients))

    @classmethod
    def from_strings(cls, chart: Chart, sources: Sequence[Union[str, Expr]]) -> "OneForm":
        return cls(chart, _parse_all(chart, sources))

    @classmethod
    def zero(cls, chart: Chart) -> "OneForm":
        return cls(chart, (ZERO,) * chart.dimension)

    @classmethod
    def coordinate(cls, chart: Chart, symbol: str) -> "OneForm":
        index = chart.index(symbol)
        return cls(chart, tuple(ONE if i == index else ZERO for i in range(chart.dimension)))

    def __add__(self, other: "OneForm") -> "OneForm":
        require_same_chart(self, other)
        return OneForm(
            self.chart,
            tuple(simplify(Add((a, b))) for a, b in zip(self.coefficients, other.coefficients)),
        )

    def __sub__(self, other: "OneForm") -> "OneForm":
        require_same_chart(self, other)
        return OneForm(
            self.chart,
            tuple(simplify(Add((a, Neg(b)))) for a, b in zip(self.coefficients, other.coefficients)),
        )

    def scaled(self, factor: Scalar) -> "OneForm":
        factor = as_expr(factor)
        return OneForm(self.chart, tuple(simplify(Mul((factor, c))) for c in self.coefficients))

    def pair(self, X: VectorField) -> Expr:
        """theta(X)"""
        require_same_chart(self, X)
        return simplify(Add(tuple(Mul((a, b)) for a, b in zip(self.coefficients, X.components))))

    def at(self, point: Mapping[str, float]) -> np.ndarray:
        return np.array([evaluate(c, point) for c in self.coefficients], dtype=float)

    def vanishes(self, tester: Optional[ZeroTest] = None) -> bool:
        tester = tester or ZeroTest()
        return all(tester(c, self.chart.domain) for c in self.coefficients)

    def equals(self, other: "OneForm", tester: Optional[ZeroTest] = None) -> bool:
        return (self - other).vanishes(tester)


IndexPair = Tuple[int, int]


@dataclass(frozen=True)
class TwoForm:
    """omega = sum_{l<m} c_lm dx^l ^ dx^m, stored as the l<m table"""

    chart: Chart
    entries: Mapping[IndexPair, Expr] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self) -> None:
        n = self.chart.dimension
        cleaned: Dict[IndexPair, Expr] = {}
        for (l, m), coeff in self.entries.items():
            if not (0 <= l < m < n):
                raise PreconditionFailedException(f"Two-form entry ({l}, {m}) is not an upper-triangular index pair")
            if isinstance(coeff, Const) and coeff.value == 0:
                continue
            cleaned[(l, m)] = coeff
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def from_strings(
        cls,
        chart: Chart,
        sources: Mapping[Tuple[Union[int, str], Union[int, str]], Union[str, Expr]],
        label: str = "",
    ) -> "TwoForm":
        """Build from {(l, m): coefficient}; indices may be symbol names.

        A pair given as l > m is stored as -c at (m, l).
        """
        entries: Dict[IndexPair, Expr] = {}
        for (a, b), source in sources.items():
            l = chart.index(a) if isinstance(a, str) else a
            m = chart.index(b) if isinstance(b, str) else b
            coeff = source if isinstance(source, Expr) else chart.parse(source)
            if l > m:
                l, m, coeff = m, l, simplify(Neg(coeff))
            if l == m:
                raise PreconditionFailedException("Two-form entries need distinct indices")
            previous = entries.get((l, m))
            entries[(l, m)] = coeff if previous is None else simplify(Add((previous, coeff)))
        return cls(chart, entries, label)

    @classmethod
    def zero(cls, chart: Chart) -> "TwoForm":
        return cls(chart, {}, "0")

    def relabeled(self, label: str) -> "TwoForm":
        return TwoForm(self.chart, self.entries, label)

    def coefficient(self, l: int, m: int) -> Expr:
        """Entry of the full antisymmetric matrix"""
        if l == m:
            return ZERO
        if l < m:
            return self.entries.get((l, m), ZERO)
        coeff = self.entries.get((m, l))
        return ZERO if coeff is None else simplify(Neg(coeff))

    def __add__(self, other: "TwoForm") -> "TwoForm":
        require_same_chart(self, other)
        entries = dict(self.entries)
        for key, coeff in other.entries.items():
            entries[key] = simplify(Add((entries[key], coeff))) if key in entries else coeff
        return TwoForm(self.chart, entries)

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        return self + other.scaled(-1)

    def scaled(self, factor: Scalar) -> "TwoForm":
        factor = as_expr(factor)
        return TwoForm(
            self.chart,
            {key: simplify(Mul((factor, coeff))) for key, coeff in self.entries.items()},
            self.label,
        )

    def matrix_at(self, point: Mapping[str, float]) -> np.ndarray:
        n = self.chart.dimension
        matrix = np.zeros((n, n))
        for (l, m), coeff in self.entries.items():
            value = evaluate(coeff, point)
            matrix[l, m] = value
            matrix[m, l] = -value
        return matrix

    def matrix_function(self) -> Callable[[Sequence[float]], np.ndarray]:
        """Compiled map from coordinate values to the antisymmetric matrix"""
        n = self.chart.dimension
        keys = list(self.entries)
        values = compile_vector([self.entries[key] for key in keys], self.chart.symbols)

        def matrix(point: Sequence[float]) -> np.ndarray:
            result = np.zeros((n, n))
            for (l, m), value in zip(keys, values(point)):
                result[l, m] = value
                result[m, l] = -value
            return result

        return matrix

    def vanishes(self, tester: Optional[ZeroTest] = None) -> bool:
        tester = tester or ZeroTest()
        return all(tester(c, self.chart.domain) for c in self.entries.values())

    def equals(self, other: "TwoForm", tester: Optional[ZeroTest] = None) -> bool:
        return (self - other).vanishes(tester)
