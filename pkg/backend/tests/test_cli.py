import json
import logging
from pathlib import Path

import jsonschema
import pytest

from app.cli import normalize_argv, options
from app.cli.options import coefficient_overrides, parse_point
from app.core.exceptions import UsageException
from app.services.report import FORMATS
from main import main

SCHEMA_PATH = Path(__file__).resolve().parents[2] / "docs" / "report_schema.json"


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def run(tmp_path):
    def _run(*argv):
        return main([*argv, "--output-dir", str(tmp_path)])

    return _run


class TestOptions:
    def test_normalize_negative_points(self):
        assert normalize_argv(["integrate", "riccati4", "--x0", "-1,-2,-3,-4"]) == [
            "integrate",
            "riccati4",
            "--x0=-1,-2,-3,-4",
        ]

    def test_parse_point(self):
        assert parse_point("0,1,0") == [0.0, 1.0, 0.0]

    def test_coefficient_overrides(self):
        assert coefficient_overrides(["b1=cos(t)", " a = 1 "]) == {"b1": "cos(t)", "a": "1"}

    @pytest.mark.parametrize("pair", ["b1", "=1", "b1="])
    def test_bad_override(self, pair):
        with pytest.raises(UsageException):
            coefficient_overrides([pair])

    def test_format_choices_match_the_renderers(self):
        assert FORMATS == ("text", "json")
        assert options.FORMATS is FORMATS


class TestExitCodes:
    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "verify" in capsys.readouterr().out

    def test_unknown_example(self, run, capsys):
        assert run("verify", "nosuch", "all") == 2
        err = capsys.readouterr().err
        assert "Unknown example: nosuch" in err
        assert "schwarz3ks" in err

    def test_unknown_suite(self, run):
        assert run("verify", "schwarz3ks", "nosuch") == 2

    def test_negative_seed(self, run):
        assert run("verify", "schwarz3ks", "algebra", "--seed", "-1") == 2

    def test_unknown_coefficient(self, run):
        assert run("integrate", "schwarz3ks", "--coeff", "nosuch=1", "--t1", "0") == 2

    def test_start_outside_domain(self, run, capsys):
        assert run("integrate", "schwarz3ks", "--x0", "0,0,0") == 3
        assert "error:" in capsys.readouterr().err

    def test_missing_load_file(self, run, tmp_path):
        assert run("verify", "--load", str(tmp_path / "absent.json"), "structure") == 2


class TestVerify:
    def test_algebra_suite(self, run, capsys):
        assert run("verify", "schwarz3ks", "algebra") == 0
        out = capsys.readouterr().out
        assert "[Y1,Y2]=Y1 ✓" in out
        assert "✗" not in out

    def test_json_format(self, run, capsys):
        assert run("verify", "schwarz3ks", "algebra", "--format", "json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["example_id"] == "schwarz3ks"
        assert [suite["suite"] for suite in report["suites"]] == ["algebra"]

    def test_loaded_structure(self, run, capsys, tmp_path):
        path = tmp_path / "plane.json"
        path.write_text(json.dumps({
            "chart": ["x", "y"],
            "forms": [[{"i": "x", "j": "y", "coeff": "1"}]],
        }), encoding="utf-8")
        assert run("verify", "--load", str(path), "structure") == 0
        assert "1-symplectic structure on x,y ✓" in capsys.readouterr().out

    def test_loaded_degenerate_structure(self, run, tmp_path):
        path = tmp_path / "degenerate.json"
        path.write_text(json.dumps({
            "chart": ["x", "y", "z"],
            "forms": [[{"i": "x", "j": "y", "coeff": "1"}]],
        }), encoding="utf-8")
        assert run("verify", "--load", str(path), "structure") == 1


class TestIntegrate:
    def test_zero_length_interval(self, run, capsys):
        assert run("integrate", "schwarz3ks", "--t1", "0") == 0
        assert "0 RK4 steps" in capsys.readouterr().out

    def test_riccati_closed_form(self, run, capsys):
        argv = ["integrate", "riccati4", "--x0", "-1,-2,-3,-4", "--coeff", "a=0", "--coeff", "b=0"]
        assert run(*argv, "--format", "json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["final_state"][0] == pytest.approx(-0.5, abs=1e-10)
        assert report["steps"] == 1000

    def test_prolonged_invariants(self, run, capsys, tmp_path):
        assert run("integrate", "schwarz3ks", "--prolong", "2", "--invariants", "--t1", "0.2") == 0
        out = capsys.readouterr().out
        assert "final copy 2" in out
        assert (tmp_path / "schwarz3ks_trajectory.csv").exists()
        assert (tmp_path / "schwarz3ks_drift.json").exists()

    def test_superposition(self, run, capsys):
        assert run("integrate", "schwarz3ks", "--superposition", "--t1", "0.2") == 0
        assert "✓" in capsys.readouterr().out


class TestReport:
    def test_empty_report(self, run, capsys):
        assert run("report", "--format", "text") == 0
        assert capsys.readouterr().out.strip() == "no results"

    def test_report_after_verify(self, run, capsys):
        assert run("verify", "schwarz3ks", "algebra") == 0
        capsys.readouterr()
        assert run("report", "--format", "json") == 0
        report = json.loads(capsys.readouterr().out)
        schema = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
        jsonschema.validate(report, schema)
        (row,) = report["examples"]
        assert row["example_id"] == "schwarz3ks"
        assert row["constants_match"] is True
