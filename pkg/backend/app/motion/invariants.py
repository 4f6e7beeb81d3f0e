"""
Casimir-derived constants of motion

The Schwarzian invariants live on the two-copy product chart of the
third-order Kummer-Schwarz system, coordinates (x_1, v_1, a_1, x_2, v_2, a_2).
"""

import logging
from typing import List, NamedTuple, Optional, Sequence

from app.core.exceptions import BracketTableMismatchException
from app.expr import Const, Expr, Mul, Neg, Pow, ZeroTest, parse, simplify
from app.geom import TwoForm, VectorField
from app.ksymp import bracket_theta, check_hamiltonian
from app.prolong import ProductChart

logger = logging.getLogger(__name__)


class LabeledExpr(NamedTuple):
    label: str
    expr: Expr


SCHWARZIAN_SOURCES = {
    "C_xi1": "(a_2*v_1 - a_1*v_2)^2/(v_1^3*v_2^3)",
    "C_xi2": (
        "-4*(-1*x_1*x_2 + 2*v_1*v_2*(v_1*x_2 - v_2*x_1)/(a_1*v_2 - v_1*a_2))"
        "*(a_2*v_1 - a_1*v_2)^2/(v_1^3*v_2^3) - 4^2"
    ),
    "F_xi1xi2": (
        "-2*(a_2*v_1 - v_2*a_1)^2/(v_1^3*v_2^3)"
        "*(x_1 + x_2 - 2*v_1*v_2*(v_1 - v_2)/(a_1*v_2 - v_1*a_2))"
    ),
    "F1": "x_1*x_2 - 2*v_1*v_2*(v_1*x_2 - v_2*x_1)/(a_1*v_2 - v_1*a_2)",
    "F3": "x_1 + x_2 - 2*v_1*v_2*(v_1 - v_2)/(a_1*v_2 - v_1*a_2)",
    "F4": "x_1 - x_2 - 2*v_1*v_2*(v_1 + v_2)/(a_1*v_2 - v_1*a_2)",
}

# Vanishes exactly where the two copies stop determining the invariants
SCHWARZIAN_DEGENERACY = "a_1*v_2 - v_1*a_2"

CROSS_RATIO_SOURCE = "(x1 - x3)*(x2 - x4)/((x1 - x4)*(x2 - x3))"


def _schwarzian_product() -> ProductChart:
    from app.registry import get_example

    return get_example("schwarz3ks").product(2)


def schwarzian_invariants(product: Optional[ProductChart] = None) -> List[LabeledExpr]:
    """C_xi1, C_xi2, F_xi1xi2, F1, F3 and F4 on the two-copy product chart"""
    product = product or _schwarzian_product()
    return [LabeledExpr(label, product.parse(src)) for label, src in SCHWARZIAN_SOURCES.items()]


def schwarzian_degeneracy(product: Optional[ProductChart] = None) -> Expr:
    product = product or _schwarzian_product()
    return product.parse(SCHWARZIAN_DEGENERACY)


def cross_ratio(chart_symbols: Sequence[str] = ("x1", "x2", "x3", "x4")) -> LabeledExpr:
    return LabeledExpr("k", parse(CROSS_RATIO_SOURCE, tuple(chart_symbols)))


def casimir_constant(
    h1: Expr,
    h2: Expr,
    h3: Expr,
    X1: VectorField,
    X2: VectorField,
    X3: VectorField,
    omega_theta: TwoForm,
    tester: Optional[ZeroTest] = None,
) -> Expr:
    """h1*h3 - h2^2 for functions closing {h1,h2} = -h1, {h1,h3} = -2h2, {h2,h3} = -h3.

    Args:
        h1: First function of the triple.
        h2: Second function of the triple.
        h3: Third function of the triple.
        X1: Hamiltonian field of h1 under omega_theta.
        X2: Hamiltonian field of h2 under omega_theta.
        X3: Hamiltonian field of h3 under omega_theta.
        omega_theta: The contracted two-form.
        tester: Zero test for the table and the commutation certificate.

    Returns:
        The Casimir function, certified to commute with h1, h2 and h3.

    Raises:
        BracketTableMismatchException: The table or a Hamiltonian relation fails.
    """
    tester = tester or ZeroTest()
    domain = omega_theta.chart.domain
    for index, (X, h) in enumerate(((X1, h1), (X2, h2), (X3, h3)), start=1):
        if not check_hamiltonian(X, omega_theta, h, tester):
            raise BracketTableMismatchException(detail=f"X{index} is not a Hamiltonian field of h{index}")

    table = (
        ("{h1,h2} = -h1", bracket_theta(h1, h2, X2) + h1),
        ("{h1,h3} = -2*h2", bracket_theta(h1, h3, X3) + Mul((Const(2), h2))),
        ("{h2,h3} = -h3", bracket_theta(h2, h3, X3) + h3),
    )
    for relation, residual in table:
        if not tester(residual, domain):
            raise BracketTableMismatchException(detail=f"{relation} fails")

    casimir = simplify(Mul((h1, h3)) + Neg(Pow(h2, 2)))
    for index, X in enumerate((X1, X2, X3), start=1):
        if not tester(X.apply(casimir), domain):
            raise BracketTableMismatchException(detail=f"Casimir does not commute with h{index}")
    logger.debug("Casimir certified on %s", omega_theta.chart.symbols)
    return casimir
