"""
t-dependent vector fields X_t = sum_alpha b_alpha(t) X_alpha
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.exceptions import ComponentCountMismatchException, PreconditionFailedException
from app.expr import TIME_SYMBOL, ZERO, Add, Const, Expr, Mul, compile_vector, parse, simplify
from app.geom import Chart, VectorField, require_same_chart
from app.prolong import ProductChart, product_chart, prolong_field

Vector = Callable[[float, np.ndarray], np.ndarray]


def _is_zero_constant(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 0


@dataclass(frozen=True)
class TDependentField:
    """A Lie system given by a basis of a Vessiot-Guldberg algebra and t-coefficients"""

    basis: Tuple[VectorField, ...]
    coefficients: Tuple[Expr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        if not self.basis:
            raise PreconditionFailedException("A t-dependent field needs at least one basis field")
        if len(self.coefficients) != len(self.basis):
            raise ComponentCountMismatchException(len(self.basis), len(self.coefficients))
        require_same_chart(*self.basis)
        for b in self.coefficients:
            extra = b.free_symbols - {TIME_SYMBOL}
            if extra:
                raise PreconditionFailedException(
                    f"Coefficient {b} depends on {sorted(extra)}; only t is allowed"
                )

    @classmethod
    def from_strings(
        cls,
        basis: Sequence[VectorField],
        sources: Sequence[Union[str, Expr]],
    ) -> "TDependentField":
        return cls(tuple(basis), tuple(s if isinstance(s, Expr) else parse(s) for s in sources))

    @property
    def chart(self) -> Chart:
        return self.basis[0].chart

    def at_time(self, t: float) -> VectorField:
        """The autonomous field X_t for a fixed t"""
        total = VectorField.zero(self.chart)
        for b, X in zip(self.coefficients, self.basis):
            if not _is_zero_constant(b):
                total = total + X.scaled(Const(b_value(b, t)))
        return total

    def evaluator(self) -> Vector:
        """Compiled right-hand side f(t, x)"""
        active = [(b, X) for b, X in zip(self.coefficients, self.basis) if not _is_zero_constant(b)]
        weights = compile_vector([b for b, _ in active], (TIME_SYMBOL,))
        fields = [X.compiled() for _, X in active]
        n = self.chart.dimension

        def rhs(t: float, x: np.ndarray) -> np.ndarray:
            result = np.zeros(n)
            for weight, field in zip(weights([t]), fields):
                result += weight * field(x)
            return result

        return rhs

    def prolonged(self, m: int, product: Optional[ProductChart] = None) -> "TDependentField":
        product = product or product_chart(self.chart, m)
        return TDependentField(tuple(prolong_field(X, m, product) for X in self.basis), self.coefficients)


def b_value(b: Expr, t: float) -> float:
    return float(compile_vector([b], (TIME_SYMBOL,))([t])[0])


def hamiltonian_curve(F: TDependentField, hamiltonians: Sequence[Expr]) -> Expr:
    """h_t = sum_alpha b_alpha(t) h^alpha for Hamiltonians of the basis"""
    if len(hamiltonians) != len(F.basis):
        raise ComponentCountMismatchException(len(F.basis), len(hamiltonians))
    terms = [Mul((b, h)) for b, h in zip(F.coefficients, hamiltonians) if not _is_zero_constant(b)]
    return simplify(Add(tuple(terms))) if terms else ZERO
