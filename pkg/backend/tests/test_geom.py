"""
Tests for charts, fields, forms and exterior calculus
"""

import itertools

import numpy as np
import pytest

from app.core.exceptions import (
    ChartMismatchException,
    ComponentCountMismatchException,
    PreconditionFailedException,
    UnknownSymbolException,
)
from app.expr import ZERO, Add, DomainBox, Mul, differentiate, simplify
from app.geom import (
    Chart,
    OneForm,
    TwoForm,
    VectorField,
    closedness_defect,
    exterior_derivative_0,
    exterior_derivative_1,
    interior_product,
    is_closed,
    jacobi_defect,
    lie_bracket,
    lie_derivative_2,
    wedge,
)
from app.geom.serialization import structure_from_dict, structure_to_dict

XYZ = Chart(("x", "y", "z"))


def random_field(random_expr, seed: int, label: str = "") -> VectorField:
    return VectorField(XYZ, tuple(random_expr(seed * 10 + i, depth=3) for i in range(3)), label)


class TestChart:
    @pytest.mark.parametrize("symbols", [(), ("x", "x"), ("x", "t"), ("x", "2y")])
    def test_invalid_charts(self, symbols):
        with pytest.raises(PreconditionFailedException):
            Chart(symbols)

    def test_index_and_point(self):
        assert XYZ.index("z") == 2
        assert XYZ.point([1, 2, 3]) == {"x": 1.0, "y": 2.0, "z": 3.0}
        with pytest.raises(UnknownSymbolException):
            XYZ.index("w")
        with pytest.raises(PreconditionFailedException):
            XYZ.point([1, 2])

    def test_with_domain_keeps_symbols(self):
        narrowed = XYZ.with_domain(DomainBox(intervals={"x": (1.0, 2.0)}))
        assert narrowed.same_as(XYZ)
        assert narrowed.domain.interval("x") == (1.0, 2.0)


class TestVectorField:
    def test_component_count(self):
        with pytest.raises(ComponentCountMismatchException):
            VectorField.from_strings(XYZ, ["x", "y"])

    def test_chart_mismatch(self):
        other = VectorField.from_strings(Chart(("u", "v", "w")), ["u", "v", "w"])
        with pytest.raises(ChartMismatchException):
            VectorField.from_strings(XYZ, ["x", "y", "z"]) + other

    def test_apply_is_a_derivation(self):
        X = VectorField.from_strings(XYZ, ["y", "-1*x", "0"])
        f = XYZ.parse("x^2 + y^2")
        assert X.apply(f) == ZERO

    def test_arithmetic(self, tester):
        X = VectorField.from_strings(XYZ, ["x", "y*z", "1"])
        Y = VectorField.from_strings(XYZ, ["z", "0", "sin(x)"])
        total = (X + Y).scaled(XYZ.parse("2")) - X.scaled(2) - Y.scaled(2)
        assert total.vanishes(tester)
        assert (-X).equals(X.scaled(-1), tester)
        np.testing.assert_allclose(X.at({"x": 1.0, "y": 2.0, "z": 3.0}), [1.0, 6.0, 1.0])

    def test_compiled_matches_at(self):
        X = VectorField.from_strings(XYZ, ["x*y", "exp(z)", "cos(x) - y"])
        point = {"x": 0.3, "y": -0.8, "z": 1.1}
        np.testing.assert_allclose(X.compiled()([0.3, -0.8, 1.1]), X.at(point))


class TestLieBracket:
    def test_rotation_generators(self, tester):
        X = VectorField.from_strings(XYZ, ["0", "x", "0"], "X")
        Y = VectorField.from_strings(XYZ, ["y", "0", "0"], "Y")
        bracket = lie_bracket(X, Y)
        assert bracket.label == "[X,Y]"
        assert bracket.equals(VectorField.from_strings(XYZ, ["x", "-1*y", "0"]), tester)

    @pytest.mark.parametrize("seed", range(4))
    def test_antisymmetry(self, random_expr, tester, seed):
        X = random_field(random_expr, seed)
        Y = random_field(random_expr, seed + 100)
        assert (lie_bracket(X, Y) + lie_bracket(Y, X)).vanishes(tester)

    @pytest.mark.parametrize("seed", range(3))
    def test_jacobi(self, random_expr, tester, seed):
        fields = [random_field(random_expr, seed + 200 * i) for i in range(3)]
        assert jacobi_defect(*fields).vanishes(tester)

    def test_bracket_acts_as_commutator(self, random_expr, tester):
        X = random_field(random_expr, 7)
        Y = random_field(random_expr, 8)
        f = random_expr(9, depth=3)
        commutator = X.apply(Y.apply(f)) - Y.apply(X.apply(f))
        assert tester(commutator - lie_bracket(X, Y).apply(f), XYZ.domain)


class TestForms:
    def test_entries_are_upper_triangular(self):
        omega = TwoForm.from_strings(XYZ, {("y", "x"): "z", (0, 2): "1"})
        assert set(omega.entries) == {(0, 1), (0, 2)}
        assert simplify(Add((omega.coefficient(0, 1), XYZ.parse("z")))) == ZERO
        assert omega.coefficient(2, 0) == simplify(XYZ.parse("-1"))
        assert omega.coefficient(1, 1) == ZERO

    def test_repeated_pairs_accumulate(self, tester):
        omega = TwoForm.from_strings(XYZ, {(0, 1): "x", (1, 0): "x"})
        assert omega.vanishes(tester)

    @pytest.mark.parametrize("entries", [{(1, 1): "1"}, {(0, 5): "1"}])
    def test_invalid_entries(self, entries):
        with pytest.raises(PreconditionFailedException):
            TwoForm.from_strings(XYZ, entries)

    def test_matrix_is_antisymmetric(self):
        omega = TwoForm.from_strings(XYZ, {(0, 1): "x*y", (1, 2): "exp(z)", (0, 2): "2"})
        values = [0.5, -1.5, 0.25]
        matrix = omega.matrix_at(XYZ.point(values))
        np.testing.assert_allclose(matrix, -matrix.T)
        np.testing.assert_allclose(omega.matrix_function()(values), matrix)

    def test_one_form_pairing(self):
        theta = OneForm.from_strings(XYZ, ["y", "x", "0"])
        X = VectorField.from_strings(XYZ, ["1", "1", "z"])
        assert theta.pair(X) == simplify(XYZ.parse("x + y"))

    def test_wedge_of_coordinate_forms(self, tester):
        dx = OneForm.coordinate(XYZ, "x")
        dy = OneForm.coordinate(XYZ, "y")
        assert wedge(dx, dy).equals(TwoForm.from_strings(XYZ, {(0, 1): "1"}), tester)
        assert wedge(dx, dx).vanishes(tester)


class TestExteriorCalculus:
    @pytest.mark.parametrize("seed", range(4))
    def test_d_squared_vanishes(self, random_expr, tester, seed):
        f = random_expr(seed)
        assert exterior_derivative_1(exterior_derivative_0(f, XYZ)).vanishes(tester)

    def test_closedness(self, tester):
        assert is_closed(TwoForm.from_strings(XYZ, {(0, 1): "1", (1, 2): "x"}), tester)
        assert closedness_defect(TwoForm.from_strings(XYZ, {(0, 1): "z"}), tester) == (0, 1, 2)

    def test_exact_forms_are_closed(self, tester):
        theta = OneForm.from_strings(XYZ, ["y*z", "sin(x)", "x^2*y"])
        assert is_closed(exterior_derivative_1(theta), tester)

    def test_interior_product(self, tester):
        omega = TwoForm.from_strings(XYZ, {(0, 1): "1"})
        beta = interior_product(VectorField.coordinate(XYZ, "x"), omega)
        assert beta.equals(OneForm.coordinate(XYZ, "y"), tester)
        gamma = interior_product(VectorField.coordinate(XYZ, "y"), omega)
        assert gamma.equals(OneForm.coordinate(XYZ, "x").scaled(-1), tester)

    def test_lie_derivative_of_area_form(self, tester):
        X = VectorField.from_strings(XYZ, ["x", "0", "0"])
        omega = TwoForm.from_strings(XYZ, {(0, 1): "1"})
        assert lie_derivative_2(X, omega).equals(omega, tester)

    @pytest.mark.parametrize("seed", range(3))
    def test_cartan_matches_coordinate_formula(self, random_expr, tester, seed):
        X = random_field(random_expr, seed + 50)
        omega = TwoForm(XYZ, {pair: random_expr(seed * 7 + i, depth=2) for i, pair in enumerate([(0, 1), (0, 2), (1, 2)])})
        symbols = XYZ.symbols
        entries = {}
        for m, p in itertools.combinations(range(3), 2):
            terms = []
            for l in range(3):
                terms.append(Mul((X.components[l], differentiate(omega.coefficient(m, p), symbols[l]))))
                terms.append(Mul((omega.coefficient(l, p), differentiate(X.components[l], symbols[m]))))
                terms.append(Mul((omega.coefficient(m, l), differentiate(X.components[l], symbols[p]))))
            entries[(m, p)] = simplify(Add(tuple(terms)))
        assert lie_derivative_2(X, omega).equals(TwoForm(XYZ, entries), tester)


class TestSerialization:
    def test_structure_survives_json(self, tester):
        chart = Chart(("x", "y"), DomainBox(intervals={"x": (0.5, 2.0)}, exclusions=(XYZ.parse("y"),)))
        omega = TwoForm.from_strings(chart, {(0, 1): "x^2*y - 1/2"})
        data = structure_to_dict(chart, [omega])
        assert data["chart"] == ["x", "y"]
        (restored,) = structure_from_dict(data)
        assert restored.chart.domain.interval("x") == (0.5, 2.0)
        assert len(restored.chart.domain.exclusions) == 1
        assert restored.equals(omega.relabeled(restored.label), tester)
