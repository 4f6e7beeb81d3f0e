"""
Verification Service
Runs the identity suites of an example: structure, Hamiltonian relations,
structure constants, bracket tables and kernel stability
"""

import asyncio
import time
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.exceptions import ToolkitException
from app.core.logging import LoggerMixin
from app.expr import Const, Expr, ZeroTest, to_string
from app.geom import exterior_derivative_0, interior_product, lie_bracket
from app.ksymp import (
    KSymplecticStructure,
    OmegaHamiltonian,
    bracket_omega,
    check_hamiltonian,
    check_omega_hamiltonian,
    kernel_dimension_at,
    product_not_hamiltonian_witness,
    validate_structure,
)
from app.ksymp.witness import WITNESS_EXAMPLE
from app.liealg import format_expansion, is_stable_distribution, lie_closure, sample_points, structure_constants
from app.models import CheckResult, CheckStatus, Suite, SuiteReport, VerificationReport
from app.registry import ExampleSystem

Check = Tuple[str, Callable[[], Any]]


def _result(name: str, outcome: Any) -> CheckResult:
    """Checks return a bool or (bool, detail, certificate)"""
    if isinstance(outcome, tuple):
        passed, detail, certificate = outcome
    else:
        passed, detail, certificate = bool(outcome), None, None
    status = CheckStatus.PASSED if passed else CheckStatus.FAILED
    return CheckResult(name=name, status=status, detail=detail, certificate=certificate)


def _combination(coefficients: Sequence[Fraction], terms: Sequence[Expr]) -> Expr:
    total: Expr = Const(0)
    for c, term in zip(coefficients, terms):
        if c != 0:
            total = total + Const(c) * term
    return total


class VerificationService(LoggerMixin):
    """Service running verification suites against one example"""

    def __init__(
        self,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        tol: Optional[float] = None,
    ):
        self.seed = settings.DEFAULT_SEED if seed is None else seed
        self.trials = settings.ZERO_TEST_TRIALS if trials is None else trials
        self.tol = settings.ZERO_TEST_TOL if tol is None else tol

        self._suites: Dict[Suite, Callable[[ExampleSystem, ZeroTest], List[Check]]] = {
            Suite.STRUCTURE: self._structure_checks,
            Suite.HAMILTONIAN: self._hamiltonian_checks,
            Suite.ALGEBRA: self._algebra_checks,
            Suite.BRACKETS: self._bracket_checks,
            Suite.STABILITY: self._stability_checks,
        }

    def tester(self) -> ZeroTest:
        """A fresh seeded zero test, so every suite is reproducible on its own"""
        return ZeroTest.seeded(self.seed, self.trials, self.tol)

    async def verify(self, example: ExampleSystem, suite: Suite = Suite.ALL) -> VerificationReport:
        """
        Run one suite, or all of them, in a worker thread

        Args:
            example: The compiled example
            suite: Suite name; ``all`` runs every suite in order

        Returns:
            The verification report
        """
        return await asyncio.to_thread(self.verify_sync, example, suite)

    def verify_sync(self, example: ExampleSystem, suite: Suite = Suite.ALL) -> VerificationReport:
        report = VerificationReport(example_id=example.id, seed=self.seed, trials=self.trials, tol=self.tol)
        for name in Suite.expand(suite):
            report.suites.append(self.run_suite(example, name))
        passed = sum(check.passed for check in report.checks)
        self.logger.info(f"{example.id}: {passed}/{len(report.checks)} checks passed")
        return report

    def run_suite(self, example: ExampleSystem, suite: Suite) -> SuiteReport:
        start = time.perf_counter()
        tester = self.tester()
        report = SuiteReport(example_id=example.id, suite=suite)
        try:
            checks = self._suites[suite](example, tester)
        except ToolkitException as e:
            self.logger.error(f"{example.id}/{suite.value}: could not set up checks: {e.message}")
            checks = []
            report.checks.append(CheckResult(name=f"{suite.value} suite", status=CheckStatus.ERROR, detail=e.message))

        for name, check in checks:
            try:
                result = _result(name, check())
            except ToolkitException as e:
                self.logger.error(f"{example.id}/{suite.value}: {name} raised {type(e).__name__}: {e.message}")
                result = CheckResult(name=name, status=CheckStatus.ERROR, detail=e.message)
            self.logger.debug(f"{example.id}/{suite.value}: {result.line()}")
            report.checks.append(result)

        report.duration_seconds = time.perf_counter() - start
        self.logger.info(
            f"{example.id}/{suite.value}: {sum(c.passed for c in report.checks)}/{len(report.checks)} passed"
        )
        return report

    # Suites

    def _structure_checks(self, example: ExampleSystem, tester: ZeroTest) -> List[Check]:
        def structure() -> Tuple[bool, Optional[str], Dict[str, Any]]:
            S = validate_structure(example.forms, tester=tester, raise_on_failure=False)
            r = S.report
            detail = None
            if not all(r.closed):
                detail = f"not closed on triples {r.failing_triples}"
            elif r.degenerate_point is not None:
                detail = f"degenerate at {r.degenerate_point}"
            return r.valid, detail, r.model_dump()

        checks: List[Check] = [(f"{example.k}-symplectic structure on {','.join(example.chart.symbols)}", structure)]
        for omega in example.forms:
            for Z in example.kernels.get(omega.label, ()):
                checks.append((
                    f"{Z.label} in ker {omega.label}",
                    lambda Z=Z, omega=omega: interior_product(Z, omega).vanishes(tester),
                ))
        return checks

    def _hamiltonian_checks(self, example: ExampleSystem, tester: ZeroTest) -> List[Check]:
        checks: List[Check] = []
        for label, h in example.hamiltonians.items():
            X = h.field
            for omega, h_i in zip(example.forms, h.components):
                checks.append((
                    f"iota_{label} {omega.label} = d({to_string(h_i)})",
                    lambda X=X, omega=omega, h_i=h_i: check_hamiltonian(X, omega, h_i, tester),
                ))

        structure: List[KSymplecticStructure] = []

        def omega_hamiltonian(h: OmegaHamiltonian) -> bool:
            if not structure:
                structure.append(validate_structure(example.forms, tester=tester, raise_on_failure=False))
            return check_omega_hamiltonian(h.field, structure[0], h, tester)

        for label, h in example.hamiltonians.items():
            checks.append((f"{label} is Omega-Hamiltonian with {h.label}", lambda h=h: omega_hamiltonian(h)))

        if example.id == WITNESS_EXAMPLE:
            def witness() -> Tuple[bool, Optional[str], Optional[Dict[str, Any]]]:
                w = product_not_hamiltonian_witness(tester=tester)
                certificate = {"pair": list(w.pair), "point": w.point, "difference": w.difference} if w.differ else None
                return w.differ, None if w.differ else w.summary(), certificate

            checks.append(("h(X3).h(X2) is not Omega-Hamiltonian", witness))
        return checks

    def _algebra_checks(self, example: ExampleSystem, tester: ZeroTest) -> List[Check]:
        labels = example.labels
        model = structure_constants(example.basis, tester)
        checks: List[Check] = []
        for alpha in range(len(labels)):
            for beta in range(alpha + 1, len(labels)):
                expected = example.expected_constants[(alpha, beta)]
                recovered = model.expansion(alpha, beta)
                detail = None if recovered == expected else f"recovered {format_expansion(recovered, labels)}"
                checks.append((
                    f"[{labels[alpha]},{labels[beta]}]={format_expansion(expected, labels)}",
                    lambda ok=recovered == expected, detail=detail: (ok, detail, None),
                ))
        checks.append(("Jacobi identity", model.satisfies_jacobi))

        generators = [
            X for X, b in zip(example.basis, example.coefficient_sources)
            if not (isinstance(b, Const) and b.value == 0)
        ]
        if generators:
            def closure() -> Tuple[bool, Optional[str], Dict[str, Any]]:
                dim = lie_closure(generators, tester=tester).dimension
                return dim == len(labels), None if dim == len(labels) else f"closure has dimension {dim}", {"dimension": dim}

            checks.append((f"dim V^X = {len(labels)}", closure))
        return checks

    def _bracket_checks(self, example: ExampleSystem, tester: ZeroTest) -> List[Check]:
        labels = example.labels
        if not example.hamiltonians:
            return []
        missing = [label for label in labels if label not in example.hamiltonians]
        if missing:
            return [(
                "Omega-Hamiltonians for the whole basis",
                lambda: (False, f"missing for {', '.join(missing)}", None),
            )]

        hs: List[OmegaHamiltonian] = [example.hamiltonians[label] for label in labels]
        h_labels = [h.label for h in hs]
        chart = example.chart
        checks: List[Check] = []
        exact = any(c != 0 for row in example.hamiltonian_table.values() for c in row)

        for alpha in range(len(labels)):
            for beta in range(alpha + 1, len(labels)):
                h_a, h_b = hs[alpha], hs[beta]

                def bracket(h_a: OmegaHamiltonian = h_a, h_b: OmegaHamiltonian = h_b) -> OmegaHamiltonian:
                    return bracket_omega(h_a, h_b, h_a.field, h_b.field)

                c = example.expected_constants[(alpha, beta)]

                def up_to_constants(bracket=bracket, c=c) -> bool:
                    b = bracket()
                    for i, b_i in enumerate(b.components):
                        residual = b_i + _combination(c, [h.components[i] for h in hs])
                        if not exterior_derivative_0(residual, chart).vanishes(tester):
                            return False
                    return True

                checks.append((
                    f"d({{{h_a.label},{h_b.label}}} + {format_expansion(c, h_labels)}) = 0",
                    up_to_constants,
                ))

                if exact:
                    row = example.hamiltonian_table[(alpha, beta)]

                    def table(bracket=bracket, row=row) -> bool:
                        b = bracket()
                        return all(
                            tester(b_i - _combination(row, [h.components[i] for h in hs]), chart.domain)
                            for i, b_i in enumerate(b.components)
                        )

                    checks.append((f"{{{h_a.label},{h_b.label}}}={format_expansion(row, h_labels)}", table))
        return checks

    def _stability_checks(self, example: ExampleSystem, tester: ZeroTest) -> List[Check]:
        checks: List[Check] = []
        for omega in example.forms:
            kernel = example.kernels.get(omega.label, ())
            if not kernel:
                def trivial(omega=omega) -> Tuple[bool, Optional[str], Dict[str, Any]]:
                    points = sample_points(example.chart, [], 5, tester)
                    worst = max(kernel_dimension_at(omega, p) for p in points)
                    return worst == 0, None if worst == 0 else f"kernel dimension {worst}", {"kernel_dimension": worst}

                checks.append((f"ker {omega.label} = 0", trivial))
                continue

            def in_kernel(omega=omega, kernel=kernel) -> bool:
                return all(
                    interior_product(lie_bracket(X, Z), omega).vanishes(tester)
                    for X in example.basis
                    for Z in kernel
                )

            checks.append((f"[V, ker {omega.label}] in ker {omega.label}", in_kernel))
            if example.basis:
                checks.append((
                    f"ker {omega.label} stable under V",
                    lambda kernel=kernel: is_stable_distribution(example.basis, kernel, tester=tester),
                ))
        return checks
