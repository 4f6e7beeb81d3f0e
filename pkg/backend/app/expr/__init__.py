"""
Expression Package
Symbolic scalar expressions: parsing, calculus, evaluation and zero testing
"""

from .calculus import compile_expr, compile_vector, differentiate, rename, simplify, substitute
from .nodes import (
    FUNCTIONS,
    ONE,
    TIME_SYMBOL,
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
    as_expr,
    evaluate,
    evaluate_with_scale,
    to_string,
)
from .parser import parse
from .sampling import DomainBox, ZeroTest, find_nonzero_point, is_zero

__all__ = [
    'Add',
    'Const',
    'Div',
    'DomainBox',
    'Expr',
    'FUNCTIONS',
    'Func',
    'Mul',
    'Neg',
    'ONE',
    'Pow',
    'TIME_SYMBOL',
    'Var',
    'ZERO',
    'ZeroTest',
    'as_expr',
    'compile_expr',
    'compile_vector',
    'differentiate',
    'evaluate',
    'evaluate_with_scale',
    'find_nonzero_point',
    'is_zero',
    'parse',
    'rename',
    'simplify',
    'substitute',
    'to_string',
]
