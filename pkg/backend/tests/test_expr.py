"""
Tests for parsing, calculus, compilation and the zero test
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import (
    DomainExhaustedException,
    ExpressionSyntaxException,
    MissingBindingException,
    PreconditionFailedException,
    UndefinedAtPointException,
    UnknownSymbolException,
)
from app.expr import (
    Const,
    DomainBox,
    Pow,
    Var,
    ZeroTest,
    compile_expr,
    compile_vector,
    differentiate,
    evaluate,
    evaluate_with_scale,
    find_nonzero_point,
    is_zero,
    parse,
    rename,
    simplify,
    substitute,
    to_string,
)

XYZ = ("x", "y", "z")
POINT = {"x": 0.7, "y": -1.3, "z": 0.4, "t": 0.25}


class TestParse:
    def test_precedence(self):
        e = parse("1 + 2*x^2", XYZ)
        assert evaluate(e, {"x": 3.0}) == pytest.approx(19.0)

    def test_unary_minus_binds_tighter_than_power(self):
        assert evaluate(parse("-x^2", XYZ), {"x": 3.0}) == pytest.approx(9.0)
        assert evaluate(parse("-1*x^2", XYZ), {"x": 3.0}) == pytest.approx(-9.0)

    def test_rational_literal(self):
        e = parse("3/4", XYZ)
        assert isinstance(e, Const) and e.value == Fraction(3, 4)

    def test_division_is_left_associative(self):
        assert evaluate(parse("x/2/3", XYZ), {"x": 6.0}) == pytest.approx(1.0)
        assert evaluate(parse("1/2/4", XYZ), {}) == pytest.approx(0.125)
        assert evaluate(parse("x*3/4", XYZ), {"x": 2.0}) == pytest.approx(1.5)

    def test_rational_denominator_with_exponent(self):
        assert evaluate(parse("2/3^2", XYZ), {}) == pytest.approx(2 / 9)

    @pytest.mark.parametrize("src, expected", [("(x/2)/3", 1.0), ("x/(2/3)", 9.0), ("x/2/3", 1.0)])
    def test_nested_division_reparses(self, src, expected):
        again = parse(to_string(parse(src, XYZ)), XYZ)
        assert evaluate(again, {"x": 6.0}) == pytest.approx(expected)

    def test_signed_and_chained_exponents(self):
        assert evaluate(parse("x^-2", XYZ), {"x": 2.0}) == pytest.approx(0.25)
        # right associative: x^(2^3)
        assert evaluate(parse("x^2^3", XYZ), {"x": 2.0}) == pytest.approx(256.0)

    def test_functions_and_time(self):
        e = parse("sin(t)*exp(x) + sqrt(4) - cos(y)", XYZ)
        expected = math.sin(0.25) * math.exp(0.7) + 2.0 - math.cos(-1.3)
        assert evaluate(e, POINT) == pytest.approx(expected)

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbolException) as info:
            parse("x + w", XYZ)
        assert info.value.symbol == "w"

    def test_parameters_are_allowed(self):
        e = parse("a*x", XYZ, params=("a",))
        assert e.free_symbols == {"a", "x"}

    @pytest.mark.parametrize(
        "src, offset",
        [("x +", 3), ("(x", 2), ("x ** 2", 3), ("", 0), ("x $ y", 2), ("1/0", 2)],
    )
    def test_syntax_errors_carry_byte_offsets(self, src, offset):
        with pytest.raises(ExpressionSyntaxException) as info:
            parse(src, XYZ)
        assert info.value.offset == offset

    def test_offsets_count_bytes(self):
        with pytest.raises(ExpressionSyntaxException) as info:
            parse("x + é", XYZ)
        assert info.value.offset == 4

    def test_printing_reparses(self, random_expr):
        for seed in range(20):
            e = random_expr(seed)
            again = parse(to_string(e), XYZ)
            value, scale = evaluate_with_scale(e, POINT)
            assert evaluate(again, POINT) == pytest.approx(value, rel=1e-12, abs=1e-12 * (1 + scale))


class TestEvaluate:
    def test_missing_binding(self):
        with pytest.raises(MissingBindingException):
            evaluate(parse("x + y", XYZ), {"x": 1.0})

    @pytest.mark.parametrize("src", ["1/x", "sqrt(x - 1)", "x^-1"])
    def test_undefined_points(self, src):
        with pytest.raises(UndefinedAtPointException):
            evaluate(parse(src, XYZ), {"x": 0.0})

    def test_compiled_matches_tree_evaluation(self, random_expr):
        for seed in range(25):
            e = random_expr(seed)
            compiled = compile_expr(e, XYZ)
            values = [POINT[name] for name in XYZ]
            value, scale = evaluate_with_scale(e, POINT)
            assert compiled(values) == pytest.approx(value, rel=1e-12, abs=1e-12 * (1 + scale))

    def test_compiled_vector_raises_where_undefined(self):
        f = compile_vector([parse("x", XYZ), parse("1/y", XYZ)], XYZ)
        np.testing.assert_allclose(f([1.0, 2.0, 0.0]), [1.0, 0.5])
        with pytest.raises(UndefinedAtPointException):
            f([1.0, 0.0, 0.0])

    def test_compile_rejects_foreign_symbols(self):
        with pytest.raises(UnknownSymbolException):
            compile_expr(parse("x*y", XYZ), ("x",))


class TestCalculus:
    def test_simplify_collects_terms(self):
        e = simplify(parse("x + x - 2*x + y*y/y", XYZ))
        assert e == Var("y")

    def test_simplify_folds_constants(self):
        assert simplify(parse("2*3 - 6 + sin(0)", XYZ)) == Const(0)
        assert simplify(parse("sqrt(9/4)", XYZ)) == Const(Fraction(3, 2))

    def test_power_rule(self):
        d = differentiate(parse("x^3", XYZ), "x")
        assert simplify(d - parse("3*x^2", XYZ)) == Const(0)

    def test_derivative_of_foreign_symbol_is_zero(self):
        assert differentiate(parse("sin(y)", XYZ), "x") == Const(0)

    @pytest.mark.parametrize("seed", range(12))
    def test_derivative_matches_central_difference(self, random_expr, seed):
        e = random_expr(seed)
        d = differentiate(e, "x")
        h = 1e-6
        shifted = dict(POINT)
        shifted["x"] += h
        back = dict(POINT)
        back["x"] -= h
        numeric = (evaluate(e, shifted) - evaluate(e, back)) / (2 * h)
        _, scale = evaluate_with_scale(e, POINT)
        assert evaluate(d, POINT) == pytest.approx(numeric, rel=1e-5, abs=1e-7 * (1 + scale))

    @pytest.mark.parametrize("seed", range(8))
    def test_mixed_partials_commute(self, random_expr, tester, seed):
        e = random_expr(seed)
        xy = differentiate(differentiate(e, "x"), "y")
        yx = differentiate(differentiate(e, "y"), "x")
        assert is_zero(xy - yx, DomainBox(), 25, 1e-9, tester.rng)

    def test_substitute_is_simultaneous(self):
        e = substitute(parse("x - y", XYZ), {"x": Var("y"), "y": Var("x")})
        assert evaluate(e, {"x": 1.0, "y": 3.0}) == pytest.approx(2.0)

    def test_substitute_checks_chart(self):
        with pytest.raises(UnknownSymbolException):
            substitute(parse("x", XYZ), {"w": Var("x")}, XYZ)

    def test_rename(self):
        e = rename(parse("x*y", XYZ), {"x": "x_1"})
        assert e.free_symbols == {"x_1", "y"}

    def test_integer_powers_only(self):
        assert isinstance(parse("x^3", XYZ), Pow)


class TestZeroTest:
    def test_trig_identity(self, tester):
        assert tester(parse("sin(x)^2 + cos(x)^2 - 1", XYZ), DomainBox())

    def test_nonzero_gets_a_witness(self, tester):
        point = tester.witness(parse("x - y", XYZ), DomainBox())
        assert point is not None
        assert abs(point["x"] - point["y"]) > 1e-9

    def test_exclusions_are_respected(self):
        box = DomainBox(exclusions=(parse("x", XYZ),))
        assert is_zero(parse("x/x - 1", XYZ), box, 30, 1e-9, np.random.default_rng(1))

    def test_intervals_restrict_sampling(self):
        box = DomainBox(intervals={"x": (1.0, 2.0)})
        assert is_zero(parse("sqrt(x^2) - x", XYZ), box, 30, 1e-9, np.random.default_rng(2))

    def test_exhausted_domain(self):
        box = DomainBox(intervals={"x": (0.0, 1e-12)}, exclusions=(parse("x", XYZ),))
        with pytest.raises(DomainExhaustedException):
            find_nonzero_point(parse("x", XYZ), box, 5, 1e-9, np.random.default_rng(3))

    def test_invalid_parameters(self):
        with pytest.raises(PreconditionFailedException):
            is_zero(parse("x", XYZ), DomainBox(), trials=0)
        with pytest.raises(PreconditionFailedException):
            is_zero(parse("x", XYZ), DomainBox(), tol=0.0)

    def test_same_seed_same_witness(self):
        e = parse("x*y - z", XYZ)
        first = ZeroTest.seeded(7).witness(e, DomainBox())
        second = ZeroTest.seeded(7).witness(e, DomainBox())
        assert first == second
