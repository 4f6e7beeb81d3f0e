import asyncio
import json
from pathlib import Path

import jsonschema
import pytest

from app.core.exceptions import DegenerateAtException, LeftDomainException, UsageException
from app.models import CheckStatus, IntegrationReport, Suite, VerificationReport
from app.motion import integrate
from app.registry import example_ids
from app.services import MainService
from app.services.integration import IntegrationService, final_states
from app.services.report import NO_RESULTS, ReportService
from app.services.verification import VerificationService

SCHEMA_PATH = Path(__file__).resolve().parents[2] / "docs" / "report_schema.json"


@pytest.fixture
def verifier():
    return VerificationService(seed=20240611)


@pytest.fixture
def integrator(file_handler):
    return IntegrationService(file_handler, seed=20240611)


@pytest.fixture
def reporter(file_handler):
    return ReportService(file_handler)


def _names(report):
    return {check.name: check for check in report.checks}


class TestVerificationService:
    @pytest.mark.slow
    def test_schwarz_passes_every_suite(self, verifier, schwarz):
        report = verifier.verify_sync(schwarz)
        assert [s.suite for s in report.suites] == Suite.expand(Suite.ALL)
        failed = [check.line() for check in report.checks if not check.passed]
        assert failed == []

    def test_algebra_check_names(self, verifier, schwarz):
        report = verifier.verify_sync(schwarz, Suite.ALGEBRA)
        checks = _names(report)
        assert checks["[Y1,Y2]=Y1"].passed
        assert checks["[Y1,Y3]=2*Y2"].passed
        assert checks["[Y2,Y3]=Y3"].passed
        assert checks["Jacobi identity"].passed
        assert checks["dim V^X = 3"].passed

    def test_bracket_table_names(self, verifier, schwarz):
        checks = _names(verifier.verify_sync(schwarz, Suite.BRACKETS))
        assert checks["{h(Y1),h(Y2)}=-h(Y1)"].passed
        assert checks["{h(Y1),h(Y3)}=-2*h(Y2)"].passed
        assert checks["{h(Y2),h(Y3)}=-h(Y3)"].passed

    def test_diffusion_witness(self, verifier, diffusion):
        checks = _names(verifier.verify_sync(diffusion, Suite.HAMILTONIAN))
        witness = checks["h(X3).h(X2) is not Omega-Hamiltonian"]
        assert witness.passed
        assert len(witness.certificate["pair"]) == 2

    def test_setup_error_is_reported(self, mocker, verifier, schwarz):
        mocker.patch(
            "app.services.verification.service.validate_structure",
            side_effect=DegenerateAtException([1.0, 1.0, 1.0]),
        )
        report = verifier.verify_sync(schwarz, Suite.STRUCTURE)
        first = report.checks[0]
        assert first.status is CheckStatus.ERROR
        assert not report.passed

    def test_reproducible(self, schwarz):
        a = VerificationService(seed=7).verify_sync(schwarz, Suite.STABILITY)
        b = VerificationService(seed=7).verify_sync(schwarz, Suite.STABILITY)
        assert [c.model_dump() for c in a.checks] == [c.model_dump() for c in b.checks]

    def test_verify_runs_in_thread(self, verifier, schwarz):
        report = asyncio.run(verifier.verify(schwarz, Suite.ALGEBRA))
        assert report.example_id == "schwarz3ks"
        assert report.passed


class TestIntegrationService:
    def test_prolonged_invariants(self, integrator, schwarz, tmp_path):
        report = asyncio.run(integrator.integrate(schwarz, prolong=2, invariants=True, t1=0.1, step=0.01))
        assert report.copies == 2
        assert report.steps == 10
        assert len(report.final_state) == 6
        assert len(report.drifts) == 6
        assert report.passed
        assert Path(report.csv_path) == tmp_path / "schwarz3ks_trajectory.csv"
        drift = json.loads(Path(report.drift_path).read_text(encoding="utf-8"))
        assert drift["copies"] == 2
        assert len(drift["drifts"]) == 6

    def test_default_single_copy(self, integrator, riccati):
        report = asyncio.run(integrator.integrate(riccati, t1=0.1, step=0.01, invariants=True))
        assert report.copies == 1
        assert [d.label for d in report.drifts] == ["k"]
        assert report.passed

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"prolong": 5},
            {"prolong": 0},
            {"x0": [0.0, 1.0]},
            {"prolong": 3},
        ],
    )
    def test_usage_errors(self, integrator, schwarz, kwargs):
        with pytest.raises(UsageException) as excinfo:
            asyncio.run(integrator.integrate(schwarz, t1=0.01, **kwargs))
        assert excinfo.value.exit_code == 2

    def test_superposition(self, integrator, schwarz):
        report = asyncio.run(integrator.superposition(schwarz, t1=0.1, step=0.01))
        assert report.superposition is not None
        assert report.superposition.passed
        assert report.passed

    def test_superposition_without_invariants(self, integrator, diffusion):
        with pytest.raises(UsageException, match="no invariants"):
            asyncio.run(integrator.superposition(diffusion, t1=0.01))

    def test_partial_trajectory_written(self, mocker, integrator, schwarz, tmp_path):
        partial = integrate(schwarz.t_dependent_field(), [0.0, 1.0, 0.0], t1=0.01, step=0.005)
        mocker.patch(
            "app.services.integration.service.integrate",
            side_effect=LeftDomainException(0.01, [0.0, 1.0, 0.0], partial),
        )
        with pytest.raises(LeftDomainException):
            asyncio.run(integrator.integrate(schwarz, t1=1.0))
        rows = (tmp_path / "schwarz3ks_trajectory_partial.csv").read_text(encoding="utf-8").splitlines()
        assert rows[0] == "t,x,v,a"
        assert len(rows) == 1 + len(partial)

    def test_final_states(self):
        report = IntegrationReport(
            example_id="schwarz3ks",
            copies=2,
            t0=0.0,
            t1=1.0,
            step=1e-3,
            steps=1000,
            x0=[0.0] * 6,
            coefficients=[],
            final_state=[1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        )
        assert final_states(report, 3) == {1: [1.0, 2.0, 3.0], 2: [4.0, 5.0, 6.0]}


def _verification(example_id):
    return VerificationReport(example_id=example_id, seed=1, trials=1, tol=1e-9)


class TestReportService:
    def test_empty_cache(self, reporter):
        report = reporter.summarize()
        assert report.examples == []
        assert reporter.render_aggregate(report) == NO_RESULTS

    def test_record_and_summarize(self, reporter, verifier, schwarz):
        reporter.record_verification(verifier.verify_sync(schwarz, Suite.ALGEBRA))
        (row,) = reporter.summarize().examples
        assert row.example_id == "schwarz3ks"
        assert row.constants_match is True
        assert row.structure_valid is None
        assert row.identities_passed == row.identities_total == 5
        assert row.max_drift is None
        assert row.passed

    def test_malformed_entry_is_skipped(self, reporter):
        cache = {
            "schwarz3ks": {"verification": {"algebra": {"checks": "broken"}}},
            "user-system": {},
        }
        rows = reporter.summarize(cache).examples
        assert [row.example_id for row in rows] == ["user-system"]

    def test_rows_follow_registry_order(self, reporter):
        cache = {"zzz": {}, "riccati4": {}, "schwarz3ks": {}}
        rows = reporter.summarize(cache).examples
        assert [row.example_id for row in rows] == ["schwarz3ks", "riccati4", "zzz"]

    def test_run_all(self, mocker, reporter):
        def fake_verify(self, example, suite=Suite.ALL):
            return _verification(example.id)

        async def fake_integrate(self, example, **kwargs):
            copies = kwargs["prolong"]
            return IntegrationReport(
                example_id=example.id,
                copies=copies,
                t0=0.0,
                t1=1.0,
                step=1e-3,
                steps=1000,
                x0=list(example.record.x0) * copies,
                coefficients=[],
                final_state=list(example.record.x0) * copies,
            )

        mocker.patch.object(VerificationService, "verify_sync", new=fake_verify)
        mocker.patch.object(IntegrationService, "integrate", new=fake_integrate)

        report = asyncio.run(reporter.run_all())
        assert [row.example_id for row in report.examples] == example_ids()
        by_id = {row.example_id: row for row in report.examples}
        assert by_id["schwarz3ks"].drift_passed is True
        assert by_id["riccati4"].drift_passed is True
        assert report.passed

        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        jsonschema.validate(json.loads(reporter.render_aggregate(report, "json")), schema)

    def test_render_verification(self, reporter, verifier, schwarz):
        text = reporter.render_verification(verifier.verify_sync(schwarz, Suite.ALGEBRA))
        lines = text.splitlines()
        assert lines[1] == "== algebra =="
        assert "  [Y1,Y2]=Y1 ✓" in lines
        assert lines[-1] == "5/5 passed"

    def test_render_prolonged_integration(self, reporter, integrator, schwarz):
        report = asyncio.run(integrator.integrate(schwarz, prolong=2, t1=0.01, step=0.005))
        text = reporter.render_integration(report)
        assert "final copy 1" in text
        assert "final copy 2" in text


class TestMainService:
    @pytest.fixture
    def service(self, tmp_path):
        return MainService(tmp_path, seed=20240611)

    def test_unknown_suite(self, service):
        with pytest.raises(UsageException, match="Unknown suite"):
            asyncio.run(service.verify("schwarz3ks", "nosuch"))

    def test_missing_example(self, service):
        with pytest.raises(UsageException):
            service.resolve_example(None)

    def test_progress_and_cache(self, mocker, service, tmp_path):
        callback = mocker.Mock()
        service.set_progress_callback(callback)
        report = asyncio.run(service.verify("schwarz3ks", "algebra"))
        assert report.passed
        progress = [call.args[0] for call in callback.call_args_list]
        assert progress == [0, 100]
        cache = json.loads((tmp_path / "report_cache.json").read_text(encoding="utf-8"))
        assert list(cache["schwarz3ks"]["verification"]) == ["algebra"]

    def test_integrate_is_cached(self, service, tmp_path):
        asyncio.run(service.integrate("riccati4", t1=0.01, step=0.005))
        rows = service.reporter.summarize().examples
        assert rows[0].example_id == "riccati4"
        assert rows[0].drift_passed is True

    def test_report_summarizes_cache(self, service):
        report = asyncio.run(service.report())
        assert report.examples == []
