"""
Simplification, differentiation, substitution and compilation of expressions
"""

import logging
import math
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import UndefinedAtPointException, UnknownSymbolException

from .nodes import (
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    Mul,
    Neg,
    Pow,
    Var,
    evaluate,
)

logger = logging.getLogger(__name__)


# Simplification


def simplify(e: Expr) -> Expr:
    """Best-effort structural simplification.

    Folds constants, flattens nested sums and products, collects like terms
    with rational coefficients and like factors with integer exponents, and
    drops zero exponents. The result equals ``e`` wherever ``e`` is defined.
    """
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Add):
        return _collect_sum([simplify(t) for t in e.terms])
    if isinstance(e, Neg):
        return _collect_product([(Const(Fraction(-1)), 1), (simplify(e.arg), 1)])
    if isinstance(e, Mul):
        return _collect_product([(simplify(f), 1) for f in e.factors])
    if isinstance(e, Div):
        return _collect_product([(simplify(e.num), 1), (simplify(e.den), -1)])
    if isinstance(e, Pow):
        return _collect_product([(simplify(e.base), e.exp)])
    if isinstance(e, Func):
        return _fold_function(e.name, simplify(e.arg))
    raise TypeError(f"unknown node {type(e).__name__}")


def _split_coefficient(term: Expr) -> Tuple[Fraction, Expr]:
    if isinstance(term, Mul) and isinstance(term.factors[0], Const):
        rest = term.factors[1:]
        return term.factors[0].value, rest[0] if len(rest) == 1 else Mul(rest)
    if isinstance(term, Div):
        coefficient, rest = _split_coefficient(term.num)
        if coefficient != 1:
            return coefficient, Div(rest, term.den)
        if isinstance(term.num, Const):
            return term.num.value, Div(ONE, term.den)
    return Fraction(1), term


def _collect_sum(terms: List[Expr]) -> Expr:
    coefficients: Dict[Expr, Fraction] = {}
    constant = Fraction(0)
    pending = list(terms)
    while pending:
        term = pending.pop(0)
        if isinstance(term, Add):
            pending[:0] = list(term.terms)
            continue
        if isinstance(term, Const):
            constant += term.value
            continue
        coefficient, rest = _split_coefficient(term)
        if isinstance(rest, Const):
            constant += coefficient * rest.value
            continue
        coefficients[rest] = coefficients.get(rest, Fraction(0)) + coefficient

    collected = [
        _scaled(rest, coefficient)
        for rest, coefficient in sorted(coefficients.items(), key=lambda item: item[0].sort_key)
        if coefficient != 0
    ]
    if constant != 0:
        collected.append(Const(constant))
    if not collected:
        return ZERO
    if len(collected) == 1:
        return collected[0]
    return Add(tuple(collected))


def _scaled(rest: Expr, coefficient: Fraction) -> Expr:
    if coefficient == 1:
        return rest
    return _collect_product([(Const(coefficient), 1), (rest, 1)])


def _collect_product(items: List[Tuple[Expr, int]]) -> Expr:
    coefficient = Fraction(1)
    powers: Dict[Expr, int] = {}

    def absorb(factor: Expr, k: int) -> None:
        nonlocal coefficient
        if k == 0:
            return
        if isinstance(factor, Const):
            if factor.value == 0 and k < 0:
                powers[factor] = powers.get(factor, 0) + k
            else:
                coefficient *= factor.value ** k
        elif isinstance(factor, Mul):
            for inner in factor.factors:
                absorb(inner, k)
        elif isinstance(factor, Div):
            absorb(factor.num, k)
            absorb(factor.den, -k)
        elif isinstance(factor, Pow):
            absorb(factor.base, factor.exp * k)
        else:
            powers[factor] = powers.get(factor, 0) + k

    for factor, k in items:
        absorb(factor, k)

    if coefficient == 0:
        return ZERO

    ordered = sorted(
        ((base, k) for base, k in powers.items() if k != 0),
        key=lambda item: item[0].sort_key,
    )
    numerator = [base if k == 1 else Pow(base, k) for base, k in ordered if k > 0]
    denominator = [base if k == -1 else Pow(base, -k) for base, k in ordered if k < 0]

    if coefficient != 1 or not numerator:
        numerator.insert(0, Const(coefficient))
    num = numerator[0] if len(numerator) == 1 else Mul(tuple(numerator))
    if not denominator:
        return num
    den = denominator[0] if len(denominator) == 1 else Mul(tuple(denominator))
    return Div(num, den)


def _fold_function(name: str, arg: Expr) -> Expr:
    if isinstance(arg, Const):
        if arg.value == 0 and name in ("sin", "sqrt"):
            return ZERO
        if arg.value == 0 and name in ("cos", "exp"):
            return ONE
        if name == "sqrt" and arg.value > 0:
            num = math.isqrt(arg.value.numerator)
            den = math.isqrt(arg.value.denominator)
            if num * num == arg.value.numerator and den * den == arg.value.denominator:
                return Const(Fraction(num, den))
    return Func(name, arg)


# Differentiation


def _derivative(e: Expr, var: str) -> Expr:
    if var not in e.free_symbols:
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Add):
        return Add(tuple(_derivative(t, var) for t in e.terms))
    if isinstance(e, Neg):
        return Neg(_derivative(e.arg, var))
    if isinstance(e, Mul):
        terms = []
        for i, factor in enumerate(e.factors):
            if var not in factor.free_symbols:
                continue
            rest = e.factors[:i] + (_derivative(factor, var),) + e.factors[i + 1:]
            terms.append(Mul(rest))
        return Add(tuple(terms)) if len(terms) > 1 else terms[0]
    if isinstance(e, Div):
        dn = _derivative(e.num, var)
        dd = _derivative(e.den, var)
        return Div(Add((Mul((dn, e.den)), Neg(Mul((e.num, dd))))), Pow(e.den, 2))
    if isinstance(e, Pow):
        return Mul((Const(Fraction(e.exp)), Pow(e.base, e.exp - 1), _derivative(e.base, var)))
    if isinstance(e, Func):
        inner = _derivative(e.arg, var)
        if e.name == "sin":
            outer: Expr = Func("cos", e.arg)
        elif e.name == "cos":
            outer = Neg(Func("sin", e.arg))
        elif e.name == "exp":
            outer = e
        else:
            outer = Div(ONE, Mul((Const(Fraction(2)), e)))
        return Mul((outer, inner))
    raise TypeError(f"unknown node {type(e).__name__}")


def differentiate(e: Expr, var: str) -> Expr:
    """Partial derivative of ``e`` with respect to ``var``, simplified"""
    return simplify(_derivative(e, var))


# Substitution


def _replace(e: Expr, bindings: Mapping[str, Expr]) -> Expr:
    if not e.free_symbols & bindings.keys():
        return e
    if isinstance(e, Var):
        return bindings[e.name]
    if isinstance(e, Add):
        return Add(tuple(_replace(t, bindings) for t in e.terms))
    if isinstance(e, Mul):
        return Mul(tuple(_replace(f, bindings) for f in e.factors))
    if isinstance(e, Div):
        return Div(_replace(e.num, bindings), _replace(e.den, bindings))
    if isinstance(e, Pow):
        return Pow(_replace(e.base, bindings), e.exp)
    if isinstance(e, Neg):
        return Neg(_replace(e.arg, bindings))
    if isinstance(e, Func):
        return Func(e.name, _replace(e.arg, bindings))
    return e


def substitute(
    e: Expr,
    bindings: Mapping[str, Expr],
    chart: Optional[Sequence[str]] = None,
) -> Expr:
    """Simultaneous substitution followed by simplification.

    Args:
        e: Expression to rewrite.
        bindings: Symbol to replacement expression.
        chart: When given, every bound symbol must belong to it.
    """
    if chart is not None:
        symbols = set(getattr(chart, "symbols", chart))
        for name in bindings:
            if name not in symbols:
                raise UnknownSymbolException(name)
    return simplify(_replace(e, bindings))


def rename(e: Expr, mapping: Mapping[str, str]) -> Expr:
    """Rename symbols without simplifying"""
    return _replace(e, {old: Var(new) for old, new in mapping.items()})


# Compilation


def _source(e: Expr, index: Mapping[str, int]) -> str:
    if isinstance(e, Const):
        return f"({e.value.numerator}/{e.value.denominator})"
    if isinstance(e, Var):
        return f"_x[{index[e.name]}]"
    if isinstance(e, Add):
        return "(" + " + ".join(_source(t, index) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "(" + " * ".join(_source(f, index) for f in e.factors) + ")"
    if isinstance(e, Div):
        return f"({_source(e.num, index)} / {_source(e.den, index)})"
    if isinstance(e, Pow):
        return f"({_source(e.base, index)} ** {e.exp})"
    if isinstance(e, Neg):
        return f"(-{_source(e.arg, index)})"
    if isinstance(e, Func):
        return f"_m.{e.name}({_source(e.arg, index)})"
    raise TypeError(f"unknown node {type(e).__name__}")


def compile_vector(
    exprs: Sequence[Expr],
    symbols: Sequence[str],
) -> Callable[[Sequence[float]], np.ndarray]:
    """Compile expressions into one callable taking values in ``symbols`` order.

    The callable raises UndefinedAtPointException wherever ``evaluate`` would.
    """
    symbols = tuple(symbols)
    index = {name: i for i, name in enumerate(symbols)}
    missing = set().union(*(e.free_symbols for e in exprs)) - set(index) if exprs else set()
    if missing:
        raise UnknownSymbolException(sorted(missing)[0])

    raw: Optional[Callable[[Sequence[float]], Tuple[float, ...]]] = None
    try:
        body = ", ".join(_source(e, index) for e in exprs)
        code = f"lambda _x: ({body},)" if body else "lambda _x: ()"
        raw = eval(code, {"_m": math, "__builtins__": {}})  # noqa: S307
    except (SyntaxError, RecursionError, MemoryError):
        logger.debug("Falling back to tree evaluation for %d expressions", len(exprs))

    def fallback(values: Sequence[float]) -> Tuple[float, ...]:
        point = dict(zip(symbols, values))
        return tuple(evaluate(e, point) for e in exprs)

    kernel = raw or fallback

    def compiled(values: Sequence[float]) -> np.ndarray:
        # Python floats raise on division by zero where numpy scalars would warn
        values = [float(v) for v in values]
        try:
            result = np.array(kernel(values), dtype=float)
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise UndefinedAtPointException(str(exc)) from exc
        if not np.all(np.isfinite(result)):
            raise UndefinedAtPointException("Non-finite value")
        return result

    return compiled


def compile_expr(e: Expr, symbols: Sequence[str]) -> Callable[[Sequence[float]], float]:
    """Compile a single expression into a float callable"""
    vector = compile_vector([e], symbols)

    def compiled(values: Sequence[float]) -> float:
        return float(vector(values)[0])

    return compiled
