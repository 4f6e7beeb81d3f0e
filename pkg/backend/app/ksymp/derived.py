"""
Contractions Omega_theta and the derived Poisson brackets {.,.}_theta
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from app.core.exceptions import ComponentCountMismatchException, PreconditionFailedException
from app.expr import ZERO, Add, Const, Expr, Mul, ZeroTest, simplify
from app.geom import Chart, TwoForm, VectorField, exterior_derivative_0

from .hamiltonian import OmegaHamiltonian
from .structure import KSymplecticStructure


@dataclass(frozen=True, init=False)
class Covector:
    """theta(e^1), ..., theta(e^k)"""

    values: Tuple[Fraction, ...]

    def __init__(self, values: Iterable[Union[int, float, Fraction]]):
        converted = []
        for value in values:
            if isinstance(value, float) and not math.isfinite(value):
                raise PreconditionFailedException("Covector entries must be finite")
            converted.append(Fraction(value))
        object.__setattr__(self, "values", tuple(converted))

    @property
    def k(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return "(" + ",".join(str(v) for v in self.values) + ")"


def theta_covectors(k: int) -> Tuple[Covector, ...]:
    """The fixed theta set (1,0,...), (0,1,0,...), (1,...,1)"""
    thetas = [Covector([1 if i == 0 else 0 for i in range(k)])]
    if k > 1:
        thetas.append(Covector([1 if i == 1 else 0 for i in range(k)]))
        thetas.append(Covector([1] * k))
    return tuple(thetas)


def contract_theta(S: Union[KSymplecticStructure, Sequence[TwoForm]], theta: Covector) -> TwoForm:
    """Omega_theta = sum_i theta(e^i) omega_i"""
    forms = S.forms if isinstance(S, KSymplecticStructure) else tuple(S)
    if theta.k != len(forms):
        raise ComponentCountMismatchException(len(forms), theta.k)
    result = TwoForm.zero(forms[0].chart)
    for weight, omega in zip(theta.values, forms):
        if weight != 0:
            result = result + omega.scaled(Const(weight))
    return result.relabeled(f"Omega_{theta}")


def phi_theta(h: OmegaHamiltonian, theta: Covector) -> Expr:
    """The morphism h -> sum_i theta(e^i) h_i"""
    if theta.k != h.k:
        raise ComponentCountMismatchException(h.k, theta.k)
    terms = [Mul((Const(w), hi)) for w, hi in zip(theta.values, h.components) if w != 0]
    return simplify(Add(tuple(terms))) if terms else ZERO


def bracket_theta(f: Expr, g: Expr, X_g: VectorField) -> Expr:
    """{f,g}_theta = X_g f, for X_g a Hamiltonian field of g under Omega_theta"""
    return X_g.apply(f)


def is_admissible(
    f: Expr,
    kernel_fields: Sequence[VectorField],
    chart: Chart,
    tester: Optional[ZeroTest] = None,
) -> bool:
    """df annihilates every supplied kernel field of Omega_theta"""
    tester = tester or ZeroTest()
    df = exterior_derivative_0(f, chart)
    return all(tester(df.pair(Z), chart.domain) for Z in kernel_fields)
