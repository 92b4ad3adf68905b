"""Tests for the run workflow that turns a RunConfig into a CommandReport."""

import json
from unittest.mock import patch

import pytest

from flesta.config import RunConfig
from flesta.exceptions import InputError, NonGapped, WorkflowError
from flesta.fixtures import mc_obstructed_toy, mc_solvable_toy, random_triangle, two_generator_complex
from flesta.novikov import format_fraction
from flesta.serialization import write_json_file
from flesta.workflows import RunWorkflow, run_config
from flesta.workflows.run import override_cap


@pytest.fixture
def two_generator_file(tmp_path):
    return write_json_file(tmp_path / "two.json", two_generator_complex().to_json())


def compute(**fields):
    return RunWorkflow(RunConfig(**fields), {"quiet": True}).compute()


class TestOverrideCap:
    def test_without_cap_returns_document(self):
        doc = {"cap": "10"}
        assert override_cap(doc, RunConfig(command="dehn")) is doc

    def test_replaces_top_level_cap(self):
        config = RunConfig(command="spectral", inputs=["c.json"], cap="5/2")
        assert override_cap({"cap": "10", "generators": []}, config) == {"cap": "5/2", "generators": []}

    def test_replaces_named_parts(self):
        config = RunConfig(command="triangle", inputs=["t.json"], cap="3")
        doc = {"C": {"cap": "10"}, "Cprime": {"cap": "10"}, "epsilon": "1/4"}
        data = override_cap(doc, config, ("Cprime", "C", "Cdoubleprime"))
        assert data["C"]["cap"] == "3"
        assert data["Cprime"]["cap"] == "3"
        assert "Cdoubleprime" not in data
        assert doc["C"]["cap"] == "10"


class TestSpectralCommand:
    def test_two_generator_complex(self, two_generator_file):
        report = compute(command="spectral", inputs=[two_generator_file])
        assert report.verdict == "ok"
        assert report.payload["stabilized_at"] == 2
        assert report.payload["cap"] == "10"
        assert report.payload["pages"][0]["r"] == 1
        assert all(page["euler"] == 0 for page in report.payload["pages"])

    def test_broken_complex_is_negative(self, tmp_path):
        doc = two_generator_complex().to_json()
        doc["generators"][1]["degree"] = 3
        path = write_json_file(tmp_path / "bad.json", doc)
        report = compute(command="spectral", inputs=[path])
        assert report.verdict == "negative"
        assert "complex_check" in report.payload

    @pytest.mark.parametrize("lambda0", ["1", "1/2"])
    def test_lambda0_not_below_gap(self, tmp_path, lambda0):
        doc = {
            "cap": "4",
            "generators": [{"name": "x", "degree": 0, "level": "0"}, {"name": "y", "degree": 1, "level": "0"}],
            "differential": [{"src": "x", "dst": "y", "scalar": [{"c": 1, "lambda": "1/2"}]}],
        }
        path = write_json_file(tmp_path / "gap.json", doc)
        with pytest.raises(NonGapped, match="strictly below the gap"):
            compute(command="spectral", inputs=[path], lambda0=lambda0)

    def test_missing_input(self, tmp_path):
        with pytest.raises(InputError, match="not found"):
            compute(command="spectral", inputs=[tmp_path / "absent.json"])


class TestAlgebraicCommands:
    def test_triangle(self, tmp_path):
        path = write_json_file(tmp_path / "t.json", random_triangle(1).to_json())
        report = compute(command="triangle", inputs=[path])
        assert report.verdict == "ok"
        assert report.payload["hypotheses"]
        assert report.payload["les"]

    def test_triangle_with_large_epsilon(self, tmp_path):
        path = write_json_file(tmp_path / "t.json", random_triangle(1).to_json())
        report = compute(command="triangle", inputs=[path], epsilon="1")
        assert report.verdict == "negative"
        assert any("condition 2" in note for note in report.notes)

    def test_mc_solve(self, tmp_path):
        algebra, _ = mc_solvable_toy(0)
        path = write_json_file(tmp_path / "a.json", algebra.to_json())
        report = compute(command="mc-solve", inputs=[path])
        assert report.verdict == "ok"
        assert report.payload["obstructed"] is False

    def test_mc_solve_obstructed(self, tmp_path):
        algebra, level = mc_obstructed_toy(0)
        path = write_json_file(tmp_path / "a.json", algebra.to_json())
        report = compute(command="mc-solve", inputs=[path])
        assert report.verdict == "negative"
        assert report.payload["level"] == format_fraction(level)
        assert report.exit_code == 1

    def test_deform_kills_curvature(self, tmp_path):
        algebra, _ = mc_solvable_toy(2)
        path = write_json_file(tmp_path / "a.json", algebra.to_json())
        report = compute(command="deform", inputs=[path])
        assert report.summary[0] == ("m₀ᵇ = 0", "True")

    def test_deform_obstructed(self, tmp_path):
        algebra, _ = mc_obstructed_toy(1)
        path = write_json_file(tmp_path / "a.json", algebra.to_json())
        report = compute(command="deform", inputs=[path])
        assert report.verdict == "negative"
        assert report.payload["obstructed"] is True

    def test_novikov_eval(self, tmp_path):
        doc = {"cap": 2, "scalars": {"a": [{"c": 1, "lambda": 0}, {"c": 1, "lambda": 1}]},
               "steps": [{"name": "inv", "op": "invert", "args": ["a"]}]}
        path = write_json_file(tmp_path / "e.json", doc)
        report = compute(command="novikov-eval", inputs=[path])
        assert report.payload["values"]["inv"]["text"] == "1T^{0} + -1T^{1}"


class TestNumericalCommands:
    def test_index_dim(self, tmp_path):
        path = write_json_file(tmp_path / "q.json", {"formula": "disc", "n": 2, "mu": 2, "k": 0})
        report = compute(command="index", inputs=[path], mode="dim")
        assert report.payload["index"]["value"] == "2"

    def test_index_rs_reports_doubled(self, tmp_path):
        doc = {"path": {"generator": "rotation", "start": [0], "end": [0.5]}, "reference": [[1.0], [0.0]]}
        path = write_json_file(tmp_path / "q.json", doc)
        report = compute(command="index", inputs=[path], mode="rs")
        assert ("Doubled", "1") in report.summary

    def test_dehn(self):
        report = compute(command="dehn", n=1, twist_lambda=0.5, samples=10)
        assert report.verdict == "ok"
        assert report.payload["tolerance_profile"] == "default"
        assert report.tables[0].columns == ["Check", "Residual", "Tolerance", "Status"]

    def test_dehn_plateau_is_negative(self):
        report = compute(command="dehn", twist_lambda=0.5, samples=5, profile="plateau",
                         profile_params={"level": 0.02})
        assert report.verdict == "negative"


class TestExecute:
    def test_writes_report_file(self, tmp_path, two_generator_file):
        out = tmp_path / "report.json"
        config = RunConfig(command="spectral", inputs=[two_generator_file], output=out)
        report = run_config(config, {"quiet": True})
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["command"] == "spectral"
        assert data["stabilized_at"] == report.payload["stabilized_at"]

    def test_unexpected_errors_are_wrapped(self):
        with patch.object(RunWorkflow, "compute", side_effect=RuntimeError("boom")):
            with pytest.raises(WorkflowError, match="boom"):
                RunWorkflow(RunConfig(command="dehn"), {"quiet": True}).execute()

    def test_known_errors_pass_through(self):
        with patch.object(RunWorkflow, "compute", side_effect=InputError("bad", "/x")):
            with pytest.raises(InputError):
                RunWorkflow(RunConfig(command="dehn"), {"quiet": True}).execute()
