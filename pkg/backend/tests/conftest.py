"""
Shared fixtures: seeded generators, random expression trees and registry data
"""

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
import pytest

from app.expr import Add, Const, Div, Expr, Func, Mul, Neg, Pow, Var, ZeroTest
from app.registry import ExampleSystem, get_example
from app.utils.file_handler import FileHandler

SEED = 20240611


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


@pytest.fixture
def tester() -> ZeroTest:
    return ZeroTest.seeded(SEED)


@pytest.fixture
def file_handler(tmp_path) -> FileHandler:
    return FileHandler(tmp_path)


@pytest.fixture
def schwarz() -> ExampleSystem:
    return get_example("schwarz3ks")


@pytest.fixture
def riccati() -> ExampleSystem:
    return get_example("riccati4")


@pytest.fixture
def diffusion() -> ExampleSystem:
    return get_example("diffusion-rs")


@pytest.fixture
def schwarz_pair(schwarz):
    """The two-copy product chart of the Kummer-Schwarz system with its invariants"""
    product = schwarz.product(2)
    return product, schwarz.invariants_for(2)


def _random_tree(rng: np.random.Generator, symbols: Sequence[str], depth: int) -> Expr:
    """Random expressions without singularities on the default sampling box"""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.3:
            numerator = int(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]))
            return Const(Fraction(numerator, int(rng.integers(1, 4))))
        return Var(symbols[int(rng.integers(len(symbols)))])
    choice = int(rng.integers(7))
    left = _random_tree(rng, symbols, depth - 1)
    if choice == 0:
        return Add((left, _random_tree(rng, symbols, depth - 1)))
    if choice == 1:
        return Mul((left, _random_tree(rng, symbols, depth - 1)))
    if choice == 2:
        # 2 + sin(.) never vanishes
        return Div(left, Add((Const(2), Func("sin", _random_tree(rng, symbols, depth - 1)))))
    if choice == 3:
        return Pow(left, int(rng.integers(1, 4)))
    if choice == 4:
        return Neg(left)
    if choice == 5:
        return Func("cos", left)
    return Func("exp", Func("sin", left))


@pytest.fixture
def random_expr() -> Callable[..., Expr]:
    """random_expr(seed, symbols=("x", "y", "z"), depth=4)"""

    def build(seed: int, symbols: Sequence[str] = ("x", "y", "z"), depth: int = 4) -> Expr:
        return _random_tree(np.random.default_rng(seed), tuple(symbols), depth)

    return build
