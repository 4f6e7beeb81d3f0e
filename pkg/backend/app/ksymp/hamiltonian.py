"""
Hamiltonian and Omega-Hamiltonian checks and the bracket {h,g}_Omega

Brackets follow {f,g} = X_g f. With iota_X omega = dh, the field of
X_g(h_i) is [X_g, X_h], so that is the field cached on {h,g}_Omega.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from app.core.exceptions import ComponentCountMismatchException, PreconditionFailedException
from app.expr import Expr, ZeroTest
from app.geom import (
    Chart,
    TwoForm,
    VectorField,
    exterior_derivative_0,
    interior_product,
    lie_bracket,
    require_same_chart,
)

from .structure import KSymplecticStructure

logger = logging.getLogger(__name__)


def check_hamiltonian(
    X: VectorField,
    omega: TwoForm,
    h: Expr,
    tester: Optional[ZeroTest] = None,
) -> bool:
    """True iff iota_X omega = dh under the zero test"""
    chart = require_same_chart(X, omega)
    residual = interior_product(X, omega) - exterior_derivative_0(h, chart)
    return residual.vanishes(tester)


@dataclass(frozen=True)
class OmegaHamiltonian:
    """h = h_1 (x) e^1 + ... + h_k (x) e^k, optionally with its field"""

    chart: Chart
    components: Tuple[Expr, ...]
    field: Optional[VectorField] = None
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))

    @classmethod
    def from_strings(
        cls,
        chart: Chart,
        sources: Sequence[Union[str, Expr]],
        field: Optional[VectorField] = None,
        label: str = "",
    ) -> "OmegaHamiltonian":
        components = tuple(s if isinstance(s, Expr) else chart.parse(s) for s in sources)
        return cls(chart, components, field, label)

    @property
    def k(self) -> int:
        return len(self.components)

    def with_field(self, field: VectorField) -> "OmegaHamiltonian":
        return OmegaHamiltonian(self.chart, self.components, field, self.label)

    def equals(self, other: "OmegaHamiltonian", tester: Optional[ZeroTest] = None) -> bool:
        if self.k != other.k:
            raise ComponentCountMismatchException(self.k, other.k)
        tester = tester or ZeroTest()
        return all(tester(a - b, self.chart.domain) for a, b in zip(self.components, other.components))


def check_omega_hamiltonian(
    X: VectorField,
    S: KSymplecticStructure,
    h: OmegaHamiltonian,
    tester: Optional[ZeroTest] = None,
) -> bool:
    if h.k != S.k:
        raise ComponentCountMismatchException(S.k, h.k)
    return all(check_hamiltonian(X, omega, hi, tester) for omega, hi in zip(S.forms, h.components))


def omega_hamiltonian_field_is_unique(
    S: KSymplecticStructure,
    X: VectorField,
    Y: VectorField,
    h: OmegaHamiltonian,
    tester: Optional[ZeroTest] = None,
) -> bool:
    """Two Omega-Hamiltonian fields of one function must coincide"""
    tester = tester or ZeroTest()
    for name, candidate in (("X", X), ("Y", Y)):
        if not check_omega_hamiltonian(candidate, S, h, tester):
            raise PreconditionFailedException(f"{name} is not an Omega-Hamiltonian field of {h.label or 'h'}")
    return (X - Y).vanishes(tester)


def bracket_omega(
    h: OmegaHamiltonian,
    g: OmegaHamiltonian,
    X_h: VectorField,
    X_g: VectorField,
    S: Optional[KSymplecticStructure] = None,
    tester: Optional[ZeroTest] = None,
) -> OmegaHamiltonian:
    """{h,g}_Omega with components X_g(h_i).

    Args:
        h: First Omega-Hamiltonian function.
        g: Second Omega-Hamiltonian function.
        X_h: Field of h.
        X_g: Field of g.
        S: When given, both fields are checked against it first.
        tester: Zero test used for the precondition.

    Returns:
        The bracket, carrying the field [X_g, X_h].
    """
    if h.k != g.k:
        raise ComponentCountMismatchException(h.k, g.k)
    if S is not None:
        if not check_omega_hamiltonian(X_h, S, h, tester):
            raise PreconditionFailedException("X_h is not the Omega-Hamiltonian field of h")
        if not check_omega_hamiltonian(X_g, S, g, tester):
            raise PreconditionFailedException("X_g is not the Omega-Hamiltonian field of g")
    components = tuple(X_g.apply(hi) for hi in h.components)
    label = f"{{{h.label},{g.label}}}" if h.label and g.label else ""
    return OmegaHamiltonian(h.chart, components, lie_bracket(X_g, X_h), label)
