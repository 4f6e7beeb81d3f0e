"""
Tests for k-symplectic structures, Omega-Hamiltonian functions and brackets
"""

from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import (
    ComponentCountMismatchException,
    DegenerateAtException,
    NotClosedException,
    PreconditionFailedException,
)
from app.expr import ZERO, Const, ZeroTest
from app.geom import Chart, TwoForm, VectorField
from app.ksymp import (
    Covector,
    OmegaHamiltonian,
    bracket_omega,
    bracket_theta,
    check_hamiltonian,
    check_omega_hamiltonian,
    contract_theta,
    is_admissible,
    kernel_dimension_at,
    numeric_rank,
    omega_hamiltonian_field_is_unique,
    phi_theta,
    theta_covectors,
    product_not_hamiltonian_witness,
    validate_structure,
)
from app.registry import example_ids, get_example

IDENTITY_TRIALS = 25
IDENTITY_TOL = 1e-9
STRUCTURE_SAMPLES = 100


@pytest.fixture
def identity_tester() -> ZeroTest:
    return ZeroTest.seeded(11, IDENTITY_TRIALS, IDENTITY_TOL)


def _structure(example, tester):
    return validate_structure(example.forms, samples=STRUCTURE_SAMPLES, tester=tester)


class TestValidateStructure:
    def test_kummer_schwarz_structure(self, schwarz, tester):
        report = _structure(schwarz, tester).report
        assert report.valid
        assert report.closed == [True, True]
        assert report.samples == STRUCTURE_SAMPLES
        assert report.dimension_condition_holds
        assert report.min_relative_singular_value > 1e-8

    def test_riccati_structure_notes_dimension(self, riccati, tester):
        S = _structure(riccati, tester)
        assert S.k == 2
        assert S.report.valid
        assert not S.report.dimension_condition_holds
        assert S.report.notes

    def test_open_form_is_reported(self, tester):
        chart = Chart(("x", "y", "z"))
        omega = TwoForm.from_strings(chart, {(0, 1): "z", (1, 2): "1"})
        with pytest.raises(NotClosedException) as info:
            validate_structure([omega], samples=5, tester=tester)
        assert info.value.triple == (0, 1, 2)

        report = validate_structure([omega], samples=5, tester=tester, raise_on_failure=False).report
        assert report.closed == [False]
        assert report.failing_triples == [(0, 1, 2)]
        assert not report.valid

    def test_degenerate_structure(self, tester):
        chart = Chart(("x", "y", "z"))
        omega = TwoForm.from_strings(chart, {(0, 1): "1"})
        with pytest.raises(DegenerateAtException):
            validate_structure([omega], samples=5, tester=tester)
        report = validate_structure([omega], samples=5, tester=tester, raise_on_failure=False).report
        assert report.degenerate_point is not None
        assert not report.valid

    def test_needs_forms(self):
        with pytest.raises(PreconditionFailedException):
            validate_structure([])


class TestRank:
    def test_numeric_rank(self):
        assert numeric_rank(np.eye(3))[0] == 3
        assert numeric_rank(np.zeros((3, 3))) == (0, 0.0)
        rank, ratio = numeric_rank(np.diag([1.0, 1e-12]))
        assert rank == 1
        assert ratio == pytest.approx(1e-12)

    def test_kernel_dimensions(self, schwarz, riccati):
        assert kernel_dimension_at(schwarz.form("omega1"), [0.0, 1.0, 0.0]) == 1
        assert kernel_dimension_at(schwarz.form("omega2"), {"x": 0.0, "v": 1.0, "a": 0.0}) == 1
        assert kernel_dimension_at(riccati.form("omega2"), [-3.5, -1.5, 0.5, 2.5]) == 0


class TestHamiltonian:
    def test_single_form(self, schwarz, identity_tester):
        omega1 = schwarz.form("omega1")
        assert check_hamiltonian(schwarz.field("Y1"), omega1, omega1.chart.parse("2/v"), identity_tester)
        assert not check_hamiltonian(schwarz.field("Y1"), omega1, omega1.chart.parse("1/v"), identity_tester)

    @pytest.mark.parametrize("example_id", example_ids())
    def test_registered_hamiltonians(self, example_id, identity_tester):
        example = get_example(example_id)
        S = validate_structure(example.forms, samples=10, tester=identity_tester, raise_on_failure=False)
        for label, h in example.hamiltonians.items():
            assert check_omega_hamiltonian(example.field(label), S, h, identity_tester), f"{example_id} {label}"

    def test_component_count(self, schwarz, tester):
        S = _structure(schwarz, tester)
        h = OmegaHamiltonian.from_strings(schwarz.chart, ["2/v"])
        with pytest.raises(ComponentCountMismatchException):
            check_omega_hamiltonian(schwarz.field("Y1"), S, h, tester)

    def test_field_is_unique(self, schwarz, tester):
        S = _structure(schwarz, tester)
        h = schwarz.hamiltonian("Y2")
        assert omega_hamiltonian_field_is_unique(S, schwarz.field("Y2"), h.field, h, tester)
        with pytest.raises(PreconditionFailedException):
            omega_hamiltonian_field_is_unique(S, schwarz.field("Y2"), schwarz.field("Y1"), h, tester)


class TestBrackets:
    @pytest.mark.parametrize("example_id", ["schwarz3ks", "riccati4"])
    def test_bracket_table(self, example_id, identity_tester):
        example = get_example(example_id)
        labels = example.labels
        for (a, b), row in example.hamiltonian_table.items():
            if a >= b:
                continue
            h, g = example.hamiltonian(labels[a]), example.hamiltonian(labels[b])
            bracket = bracket_omega(h, g, h.field, g.field)
            for i, component in enumerate(bracket.components):
                expected = ZERO
                for c, coefficient in enumerate(row):
                    if coefficient:
                        expected = expected + Const(coefficient) * example.hamiltonian(labels[c]).components[i]
                assert identity_tester(component - expected, example.chart.domain), f"{{{labels[a]},{labels[b]}}}_{i + 1}"

    def test_bracket_carries_commutator_field(self, schwarz, tester):
        h, g = schwarz.hamiltonian("Y1"), schwarz.hamiltonian("Y2")
        bracket = bracket_omega(h, g, h.field, g.field)
        assert bracket.label == "{h(Y1),h(Y2)}"
        # [Y2, Y1] = -Y1
        assert bracket.field.equals(schwarz.field("Y1").scaled(-1), tester)

    def test_bracket_checks_fields(self, schwarz, tester):
        S = _structure(schwarz, tester)
        h, g = schwarz.hamiltonian("Y1"), schwarz.hamiltonian("Y2")
        with pytest.raises(PreconditionFailedException):
            bracket_omega(h, g, schwarz.field("Y3"), g.field, S, tester)


class TestDerivedBrackets:
    def test_theta_covectors(self):
        assert [p.values for p in theta_covectors(1)] == [(Fraction(1),)]
        assert [str(p) for p in theta_covectors(2)] == ["(1,0)", "(0,1)", "(1,1)"]

    def test_covector_must_be_finite(self):
        with pytest.raises(PreconditionFailedException):
            Covector([1.0, float("inf")])

    def test_contraction(self, schwarz, tester):
        total = contract_theta(schwarz.forms, Covector([1, 1]))
        assert total.equals(schwarz.form("omega1") + schwarz.form("omega2"), tester)
        assert contract_theta(schwarz.forms, Covector([0, 1])).equals(schwarz.form("omega2"), tester)
        with pytest.raises(ComponentCountMismatchException):
            contract_theta(schwarz.forms, Covector([1]))

    def test_phi_and_bracket(self, schwarz, tester):
        theta = Covector([1, 1])
        h1, h2 = schwarz.hamiltonian("Y1"), schwarz.hamiltonian("Y2")
        omega = contract_theta(schwarz.forms, theta)
        f, g = phi_theta(h1, theta), phi_theta(h2, theta)
        assert check_hamiltonian(h2.field, omega, g, tester)
        # {f,g}_theta = phi_theta({h1,h2}) = -phi_theta(h1)
        assert tester(bracket_theta(f, g, h2.field) + f, schwarz.chart.domain)

    def test_admissible_functions(self, schwarz, tester):
        kernel = schwarz.kernels["omega1"]
        chart = schwarz.chart
        assert is_admissible(chart.parse("a^2/v"), kernel, chart, tester)
        assert not is_admissible(chart.parse("x"), kernel, chart, tester)


class TestProductWitness:
    def test_default_witness(self, tester):
        witness = product_not_hamiltonian_witness(tester=tester)
        assert witness.differ
        assert witness.pair == (0, 1)
        assert set(witness.point) == {"u", "v", "w"}
        assert len(witness.difference) == 3
        assert "V1 - V2" in witness.summary()

    def test_witness_point_lies_in_the_domain(self, diffusion, tester):
        h, g = diffusion.hamiltonian("X3"), diffusion.hamiltonian("X2")
        witness = product_not_hamiltonian_witness(h, g, tester=tester)
        assert witness.differ
        assert set(witness.point) == set(diffusion.chart.symbols)
        assert diffusion.chart.domain.admits(witness.point)

    def test_candidate_fields_at_unit_point(self, diffusion, tester):
        h, g = diffusion.hamiltonian("X3"), diffusion.hamiltonian("X2")
        witness = product_not_hamiltonian_witness(h, g, tester=tester)
        point = {"u": 1.0, "v": 1.0, "w": 1.0}
        np.testing.assert_allclose(witness.fields[0].at(point), [-7.0, -2.0, 0.0])
        np.testing.assert_allclose(witness.fields[1].at(point), [-16.0, -4.0, 0.0])

    def test_single_form_never_differs(self, schwarz, tester):
        h = OmegaHamiltonian.from_strings(schwarz.chart, ["2/v"], schwarz.field("Y1"))
        witness = product_not_hamiltonian_witness(h, h, tester=tester)
        assert not witness.differ
        assert witness.summary() == "fields coincide"

    def test_mismatched_functions(self, schwarz, tester):
        h = OmegaHamiltonian.from_strings(schwarz.chart, ["2/v"], schwarz.field("Y1"))
        with pytest.raises(ComponentCountMismatchException):
            product_not_hamiltonian_witness(h, schwarz.hamiltonian("Y2"), tester=tester)

    def test_fields_are_required(self, schwarz, tester):
        h = OmegaHamiltonian.from_strings(schwarz.chart, ["2/v", "x"])
        with pytest.raises(PreconditionFailedException):
            product_not_hamiltonian_witness(h, h, tester=tester)
