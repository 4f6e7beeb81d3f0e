"""
Recursive-descent parser for scalar expressions

Grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)*          exponents associate to the right
    base   := number | ident | '(' expr ')' | '-' base | func '(' expr ')'
    number := integer ("/" integer)?   not as a divisor
    func   := 'sin' | 'cos' | 'exp' | 'sqrt'

Exponents may carry a leading minus sign. A unary minus binds tighter than
'^', so "-x^2" is (-x)^2. A literal "a/b" folds into one rational constant
unless it is a divisor or its denominator carries an exponent, so "x/2/3"
is (x/2)/3 and "2/3^2" is 2/(3^2).
"""

import re
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Set, Union

from app.core.exceptions import ExpressionSyntaxException, UnknownSymbolException

from .nodes import FUNCTIONS, TIME_SYMBOL, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")
_OPERATORS = "+-*/^()"


class _Token(NamedTuple):
    kind: str  # "num", "ident", "op" or "end"
    text: str
    offset: int


def _tokenize(src: str) -> List[_Token]:
    tokens: List[_Token] = []
    # Byte offset of every character position
    offsets = [0]
    for ch in src:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))

    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        match = _DIGITS.match(src, i)
        if match:
            tokens.append(_Token("num", match.group(), offsets[i]))
            i = match.end()
            continue
        match = _IDENT.match(src, i)
        if match:
            tokens.append(_Token("ident", match.group(), offsets[i]))
            i = match.end()
            continue
        if ch in _OPERATORS:
            tokens.append(_Token("op", ch, offsets[i]))
            i += 1
            continue
        raise ExpressionSyntaxException(f"Unexpected character {ch!r}", offsets[i])
    tokens.append(_Token("end", "", offsets[-1]))
    return tokens


class _Parser:
    def __init__(self, src: str, allowed: Set[str]):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.allowed = allowed

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _peek(self, ahead: int = 1) -> _Token:
        index = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def _is_op(self, text: str, token: Optional[_Token] = None) -> bool:
        token = token or self.current
        return token.kind == "op" and token.text == text

    def _advance(self) -> _Token:
        token = self.current
        self.pos += 1
        return token

    def _expect(self, text: str) -> None:
        if not self._is_op(text):
            raise ExpressionSyntaxException(f"Expected {text!r}", self.current.offset)
        self._advance()

    def parse(self) -> Expr:
        if self.current.kind == "end":
            raise ExpressionSyntaxException("Empty expression", self.current.offset)
        result = self.parse_expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxException(
                f"Unexpected token {self.current.text!r}", self.current.offset
            )
        return result

    def parse_expr(self) -> Expr:
        terms = [self.parse_term()]
        while self._is_op("+") or self._is_op("-"):
            negate = self._advance().text == "-"
            term = self.parse_term()
            terms.append(Neg(term) if negate else term)
        return terms[0] if len(terms) == 1 else Add(tuple(terms))

    def parse_term(self) -> Expr:
        result = self.parse_factor()
        factors = [result]
        while self._is_op("*") or self._is_op("/"):
            if self._advance().text == "*":
                factors.append(self.parse_factor())
            else:
                left = factors[0] if len(factors) == 1 else Mul(tuple(factors))
                factors = [Div(left, self.parse_factor(rational=False))]
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def parse_factor(self, rational: bool = True) -> Expr:
        base = self.parse_base(rational)
        exponents: List[int] = []
        while self._is_op("^"):
            self._advance()
            exponents.append(self._parse_integer_exponent())
        if not exponents:
            return base
        exponent = exponents[-1]
        for value in reversed(exponents[:-1]):
            if exponent < 0 and abs(value) != 1:
                raise ExpressionSyntaxException("Exponent is not an integer", self.current.offset)
            exponent = int(value ** exponent)
        return Pow(base, exponent)

    def _parse_integer_exponent(self) -> int:
        sign = 1
        if self._is_op("-"):
            self._advance()
            sign = -1
        token = self.current
        if token.kind != "num":
            raise ExpressionSyntaxException("Expected integer exponent", token.offset)
        self._advance()
        return sign * int(token.text)

    def parse_base(self, rational: bool = True) -> Expr:
        token = self.current
        if token.kind == "num":
            self._advance()
            numerator = int(token.text)
            if (
                rational
                and self._is_op("/")
                and self._peek().kind == "num"
                and not self._is_op("^", self._peek(2))
            ):
                self._advance()
                den_token = self._advance()
                denominator = int(den_token.text)
                if denominator == 0:
                    raise ExpressionSyntaxException("Zero denominator", den_token.offset)
                return Const(Fraction(numerator, denominator))
            return Const(Fraction(numerator))
        if token.kind == "ident":
            self._advance()
            if token.text in FUNCTIONS and self._is_op("("):
                self._advance()
                arg = self.parse_expr()
                self._expect(")")
                return Func(token.text, arg)
            if token.text in self.allowed:
                return Var(token.text)
            raise UnknownSymbolException(token.text)
        if self._is_op("("):
            self._advance()
            inner = self.parse_expr()
            self._expect(")")
            return inner
        if self._is_op("-"):
            self._advance()
            return Neg(self.parse_base(rational))
        if token.kind == "end":
            raise ExpressionSyntaxException("Unexpected end of input", token.offset)
        raise ExpressionSyntaxException(f"Unexpected token {token.text!r}", token.offset)


def parse(
    src: str,
    chart: Union[Sequence[str], object] = (),
    params: Iterable[str] = (),
) -> Expr:
    """Parse an expression over a chart.

    Args:
        src: Expression text.
        chart: A chart, or a sequence of coordinate symbols.
        params: Extra identifiers allowed besides the chart and ``t``.

    Returns:
        The expression tree, unsimplified.
    """
    symbols = getattr(chart, "symbols", chart)
    allowed = set(symbols) | set(params) | {TIME_SYMBOL}
    return _Parser(src, allowed).parse()
