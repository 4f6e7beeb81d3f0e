"""
Exterior calculus on a chart

Three-forms never leave this module: closedness and the Cartan formula use
the cyclic coefficient T(l,m,p) = d_l W_mp + d_m W_pl + d_p W_lm directly.
"""

import itertools
import logging
from typing import Dict, Optional, Tuple

from app.expr import ZERO, Add, Const, Expr, Mul, Neg, ZeroTest, differentiate, simplify

from .chart import Chart
from .fields import OneForm, TwoForm, VectorField, require_same_chart

logger = logging.getLogger(__name__)


def _is_zero_const(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 0


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X,Y]^l = sum_m X^m dY^l/dx^m - Y^m dX^l/dx^m"""
    chart = require_same_chart(X, Y)
    components = []
    for l in range(chart.dimension):
        terms = []
        for m, name in enumerate(chart.symbols):
            if not _is_zero_const(X.components[m]):
                terms.append(Mul((X.components[m], differentiate(Y.components[l], name))))
            if not _is_zero_const(Y.components[m]):
                terms.append(Neg(Mul((Y.components[m], differentiate(X.components[l], name)))))
        components.append(simplify(Add(tuple(terms))) if terms else ZERO)
    label = f"[{X.label},{Y.label}]" if X.label and Y.label else ""
    return VectorField(chart, tuple(components), label)


def exterior_derivative_0(f: Expr, chart: Chart) -> OneForm:
    return OneForm(chart, tuple(differentiate(f, name) for name in chart.symbols))


def exterior_derivative_1(theta: OneForm) -> TwoForm:
    chart = theta.chart
    entries: Dict[Tuple[int, int], Expr] = {}
    for l, m in itertools.combinations(range(chart.dimension), 2):
        coeff = simplify(
            Add((
                differentiate(theta.coefficients[m], chart.symbols[l]),
                Neg(differentiate(theta.coefficients[l], chart.symbols[m])),
            ))
        )
        entries[(l, m)] = coeff
    return TwoForm(chart, entries)


def _cyclic_coefficient(omega: TwoForm, l: int, m: int, p: int) -> Expr:
    symbols = omega.chart.symbols
    return simplify(
        Add((
            differentiate(omega.coefficient(m, p), symbols[l]),
            differentiate(omega.coefficient(p, l), symbols[m]),
            differentiate(omega.coefficient(l, m), symbols[p]),
        ))
    )


def closedness_defect(omega: TwoForm, tester: Optional[ZeroTest] = None) -> Optional[Tuple[int, int, int]]:
    """First index triple whose cyclic sum is nonzero, or None"""
    tester = tester or ZeroTest()
    for l, m, p in itertools.combinations(range(omega.chart.dimension), 3):
        if not tester(_cyclic_coefficient(omega, l, m, p), omega.chart.domain):
            logger.debug("Form %s fails closedness on triple %s", omega.label, (l, m, p))
            return (l, m, p)
    return None


def is_closed(omega: TwoForm, tester: Optional[ZeroTest] = None) -> bool:
    return closedness_defect(omega, tester) is None


def interior_product(X: VectorField, omega: TwoForm) -> OneForm:
    """(iota_X omega)_m = sum_l X^l W_lm"""
    chart = require_same_chart(X, omega)
    coefficients = []
    for m in range(chart.dimension):
        terms = [
            Mul((X.components[l], omega.coefficient(l, m)))
            for l in range(chart.dimension)
            if l != m and not _is_zero_const(X.components[l])
        ]
        coefficients.append(simplify(Add(tuple(terms))) if terms else ZERO)
    return OneForm(chart, tuple(coefficients))


def lie_derivative_2(X: VectorField, omega: TwoForm) -> TwoForm:
    """Cartan formula L_X omega = iota_X d omega + d(iota_X omega)"""
    chart = require_same_chart(X, omega)
    exact_part = exterior_derivative_1(interior_product(X, omega))
    entries: Dict[Tuple[int, int], Expr] = {}
    for m, p in itertools.combinations(range(chart.dimension), 2):
        terms = [exact_part.coefficient(m, p)]
        for l in range(chart.dimension):
            if l in (m, p) or _is_zero_const(X.components[l]):
                continue
            terms.append(Mul((X.components[l], _cyclic_coefficient(omega, l, m, p))))
        entries[(m, p)] = simplify(Add(tuple(terms)))
    return TwoForm(chart, entries)


def wedge(alpha: OneForm, beta: OneForm) -> TwoForm:
    """(alpha ^ beta)_lm = alpha_l beta_m - alpha_m beta_l"""
    chart = require_same_chart(alpha, beta)
    entries: Dict[Tuple[int, int], Expr] = {}
    for l, m in itertools.combinations(range(chart.dimension), 2):
        entries[(l, m)] = simplify(
            Add((
                Mul((alpha.coefficients[l], beta.coefficients[m])),
                Neg(Mul((alpha.coefficients[m], beta.coefficients[l]))),
            ))
        )
    return TwoForm(chart, entries)


def jacobi_defect(X: VectorField, Y: VectorField, Z: VectorField) -> VectorField:
    """[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]"""
    return lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
