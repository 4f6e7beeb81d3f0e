"""
Expression tree nodes

Nodes are immutable. Structural equality and hashing go through a cached
key, so trees can be used as dictionary keys while collecting like terms.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Mapping, Tuple, Union

from app.core.exceptions import MissingBindingException, UndefinedAtPointException

TIME_SYMBOL = "t"
FUNCTIONS = ("sin", "cos", "exp", "sqrt")

Number = Union[int, Fraction]

# Binding strength used by the printer
PREC_ADD = 1
PREC_MUL = 2
PREC_UNARY = 3
PREC_POW = 4
PREC_ATOM = 5


class Expr:
    """Base class of all expression nodes"""

    @cached_property
    def key(self) -> Tuple[Any, ...]:
        return (type(self).__name__,) + self._fields()

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def _fields(self) -> Tuple[Any, ...]:
        raise NotImplementedError

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    @property
    def children(self) -> Tuple["Expr", ...]:
        return ()

    @cached_property
    def free_symbols(self) -> FrozenSet[str]:
        result: FrozenSet[str] = frozenset()
        for child in self.children:
            result = result | child.free_symbols
        return result

    @cached_property
    def sort_key(self) -> str:
        return to_string(self)

    def __str__(self) -> str:
        return to_string(self)

    # Builders do not simplify
    def __add__(self, other: Any) -> "Expr":
        return Add((self, as_expr(other)))

    def __radd__(self, other: Any) -> "Expr":
        return Add((as_expr(other), self))

    def __sub__(self, other: Any) -> "Expr":
        return Add((self, Neg(as_expr(other))))

    def __rsub__(self, other: Any) -> "Expr":
        return Add((as_expr(other), Neg(self)))

    def __mul__(self, other: Any) -> "Expr":
        return Mul((self, as_expr(other)))

    def __rmul__(self, other: Any) -> "Expr":
        return Mul((as_expr(other), self))

    def __truediv__(self, other: Any) -> "Expr":
        return Div(self, as_expr(other))

    def __rtruediv__(self, other: Any) -> "Expr":
        return Div(as_expr(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, exponent: int) -> "Expr":
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        return Pow(self, exponent)

    def evaluate(self, point: Mapping[str, float]) -> float:
        return self._evaluate(point, [0.0])

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        raise NotImplementedError


def _checked(value: float, scale: List[float]) -> float:
    if not math.isfinite(value):
        raise UndefinedAtPointException("Non-finite intermediate value")
    magnitude = abs(value)
    if magnitude > scale[0]:
        scale[0] = magnitude
    return value


@dataclass(frozen=True, eq=False)
class Const(Expr):
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))

    def _fields(self) -> Tuple[Any, ...]:
        return (self.value,)

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        return _checked(float(self.value), scale)


@dataclass(frozen=True, eq=False)
class Var(Expr):
    name: str

    def _fields(self) -> Tuple[Any, ...]:
        return (self.name,)

    @cached_property
    def free_symbols(self) -> FrozenSet[str]:
        return frozenset((self.name,))

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        if self.name not in point:
            raise MissingBindingException(self.name)
        return _checked(float(point[self.name]), scale)


@dataclass(frozen=True, eq=False)
class Add(Expr):
    terms: Tuple[Expr, ...]

    def _fields(self) -> Tuple[Any, ...]:
        return self.terms

    @property
    def children(self) -> Tuple[Expr, ...]:
        return self.terms

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        return _checked(math.fsum(t._evaluate(point, scale) for t in self.terms), scale)


@dataclass(frozen=True, eq=False)
class Mul(Expr):
    factors: Tuple[Expr, ...]

    def _fields(self) -> Tuple[Any, ...]:
        return self.factors

    @property
    def children(self) -> Tuple[Expr, ...]:
        return self.factors

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        result = 1.0
        for factor in self.factors:
            result *= factor._evaluate(point, scale)
        return _checked(result, scale)


@dataclass(frozen=True, eq=False)
class Div(Expr):
    num: Expr
    den: Expr

    def _fields(self) -> Tuple[Any, ...]:
        return (self.num, self.den)

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.num, self.den)

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        num = self.num._evaluate(point, scale)
        den = self.den._evaluate(point, scale)
        if den == 0.0:
            raise UndefinedAtPointException("Division by zero")
        return _checked(num / den, scale)


@dataclass(frozen=True, eq=False)
class Pow(Expr):
    base: Expr
    exp: int

    def _fields(self) -> Tuple[Any, ...]:
        return (self.base, self.exp)

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.base,)

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        base = self.base._evaluate(point, scale)
        if base == 0.0 and self.exp < 0:
            raise UndefinedAtPointException("Division by zero")
        try:
            return _checked(base ** self.exp, scale)
        except OverflowError as exc:
            raise UndefinedAtPointException("Overflow in power") from exc


@dataclass(frozen=True, eq=False)
class Neg(Expr):
    arg: Expr

    def _fields(self) -> Tuple[Any, ...]:
        return (self.arg,)

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.arg,)

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        return -self.arg._evaluate(point, scale)


@dataclass(frozen=True, eq=False)
class Func(Expr):
    name: str
    arg: Expr

    def __post_init__(self) -> None:
        if self.name not in FUNCTIONS:
            raise ValueError(f"unsupported function: {self.name}")

    def _fields(self) -> Tuple[Any, ...]:
        return (self.name, self.arg)

    @property
    def children(self) -> Tuple[Expr, ...]:
        return (self.arg,)

    def _evaluate(self, point: Mapping[str, float], scale: List[float]) -> float:
        arg = self.arg._evaluate(point, scale)
        if self.name == "sqrt" and arg < 0.0:
            raise UndefinedAtPointException("Square root of a negative value")
        try:
            return _checked(getattr(math, self.name)(arg), scale)
        except OverflowError as exc:
            raise UndefinedAtPointException(f"Overflow in {self.name}") from exc


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


def as_expr(value: Any) -> Expr:
    """Coerce ints and fractions to constants"""
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Const(Fraction(value))
    raise TypeError(f"cannot use {type(value).__name__} in an expression")


def evaluate(e: Expr, point: Mapping[str, float]) -> float:
    """Evaluate an expression in double precision"""
    return e.evaluate(point)


def evaluate_with_scale(e: Expr, point: Mapping[str, float]) -> Tuple[float, float]:
    """Evaluate and report the largest absolute subterm value seen"""
    scale = [0.0]
    value = e._evaluate(point, scale)
    return value, scale[0]


# Printing


def precedence(e: Expr) -> int:
    if isinstance(e, Add):
        return PREC_ADD
    if isinstance(e, (Mul, Div)):
        return PREC_MUL
    if isinstance(e, Neg):
        return PREC_UNARY
    if isinstance(e, Pow):
        return PREC_POW
    if isinstance(e, Const):
        if e.value < 0:
            return PREC_UNARY
        if e.value.denominator != 1:
            return PREC_MUL
    return PREC_ATOM


def _wrap(e: Expr, parens: bool) -> str:
    text = to_string(e)
    return f"({text})" if parens else text


def _leading_negative(e: Expr) -> bool:
    if isinstance(e, Const):
        return e.value < 0
    if isinstance(e, Mul) and e.factors:
        return isinstance(e.factors[0], Const) and e.factors[0].value < 0
    if isinstance(e, Div):
        return _leading_negative(e.num)
    return False


def _negated(e: Expr) -> Expr:
    """Positive counterpart of a term printed after a minus sign"""
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Mul):
        head = -e.factors[0].value  # type: ignore[attr-defined]
        rest = e.factors[1:]
        if head == 1 and rest:
            return rest[0] if len(rest) == 1 else Mul(rest)
        return Mul((Const(head),) + rest)
    if isinstance(e, Div):
        return Div(_negated(e.num), e.den)
    raise ValueError("term has no leading sign")


def to_string(e: Expr) -> str:
    """Render an expression in the parser's grammar"""
    if isinstance(e, Const):
        value = e.value
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({to_string(e.arg)})"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, precedence(e.arg) < PREC_ATOM)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, precedence(e.base) < PREC_ATOM)}^{e.exp}"
    if isinstance(e, Div):
        left = _wrap(e.num, precedence(e.num) < PREC_MUL)
        right = _wrap(e.den, precedence(e.den) <= PREC_MUL)
        return f"{left}/{right}"
    if isinstance(e, Mul):
        return "*".join(_wrap(f, precedence(f) < PREC_MUL) for f in e.factors)
    if isinstance(e, Add):
        parts = [_wrap(e.terms[0], False)]
        for term in e.terms[1:]:
            if isinstance(term, Neg):
                parts.append(" - " + _wrap(term.arg, precedence(term.arg) <= PREC_ADD))
            elif _leading_negative(term):
                positive = _negated(term)
                parts.append(" - " + _wrap(positive, precedence(positive) <= PREC_ADD))
            else:
                parts.append(" + " + _wrap(term, precedence(term) <= PREC_ADD))
        return "".join(parts)
    raise TypeError(f"unknown node {type(e).__name__}")


def symbols_of(exprs: Any) -> FrozenSet[str]:
    """Union of free symbols of an iterable of expressions"""
    result: FrozenSet[str] = frozenset()
    for e in exprs:
        result = result | e.free_symbols
    return result


def point_dict(symbols: Tuple[str, ...], values: Any) -> Dict[str, float]:
    return {name: float(value) for name, value in zip(symbols, values)}
