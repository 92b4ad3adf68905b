"""
Tests for the command-line interface.

Reports are read back from --out files so that the terminal summary on
stderr does not interfere with the JSON.
"""

import json
from unittest.mock import patch

import pytest
import yaml
from typer.testing import CliRunner

from flesta import __version__
from flesta.cli import _generate_error_message, _get_recovery_suggestions, app
from flesta.cli.commands.dehn import parse_profile_params
from flesta.cli.utils import exit_code_for
from flesta.exceptions import (
    CertificationError,
    ConfigurationError,
    ExactnessFailure,
    InputError,
    NonGapped,
    NotStabilized,
    VerifiedNegative,
)
from flesta.fixtures import mc_obstructed_toy, random_triangle, two_generator_complex
from flesta.serialization import write_json_file
from flesta.workflows import RunWorkflow


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def two_generator_file(tmp_path):
    return write_json_file(tmp_path / "two.json", two_generator_complex().to_json())


def read_report(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestBasics:
    def test_version(self, runner):
        result = runner.invoke(app, ["version"])
        assert result.exit_code == 0
        assert f"FLESTA version: {__version__}" in result.output

    def test_help_lists_commands(self, runner):
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for command in ("spectral", "triangle", "ainfty-check", "mc-solve", "deform", "index", "dehn",
                        "novikov-eval", "generate-fixture", "run"):
            assert command in result.output


class TestSpectralCommand:
    def test_two_generator_complex(self, runner, tmp_path, two_generator_file):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["spectral", str(two_generator_file), "--out", str(out), "--quiet"])
        assert result.exit_code == 0
        report = read_report(out)
        assert report["command"] == "spectral"
        assert report["stabilized_at"] == 2

    def test_malformed_json(self, runner, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"generators": [', encoding="utf-8")
        result = runner.invoke(app, ["spectral", str(path), "--no-color"])
        assert result.exit_code == 2
        assert "InputError" in result.output

    def test_cap_override(self, runner, tmp_path, two_generator_file):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["spectral", str(two_generator_file), "--cap", "4", "--out", str(out), "-q"])
        assert result.exit_code == 0
        assert read_report(out)["cap"] == "4"

    def test_bad_tolerance_profile(self, runner, two_generator_file):
        result = runner.invoke(app, ["spectral", str(two_generator_file), "--tolerance-profile", "loose"])
        assert result.exit_code == 2


class TestAlgebraicCommands:
    def test_triangle(self, runner, tmp_path):
        path = write_json_file(tmp_path / "t.json", random_triangle(0).to_json())
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["triangle", str(path), "--out", str(out), "-q"])
        assert result.exit_code == 0
        assert read_report(out)["les"]["exact"] is True

    def test_mc_solve_obstructed(self, runner, tmp_path):
        algebra, _ = mc_obstructed_toy(0)
        path = write_json_file(tmp_path / "a.json", algebra.to_json())
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["mc-solve", str(path), "--out", str(out), "-q"])
        assert result.exit_code == 1
        assert read_report(out)["obstructed"] is True

    def test_novikov_eval(self, runner, tmp_path):
        doc = {"scalars": {"a": [{"c": 2, "lambda": 0}]}, "steps": [{"name": "inv", "op": "invert", "args": ["a"]}]}
        path = write_json_file(tmp_path / "e.json", doc)
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["novikov-eval", str(path), "--out", str(out), "-q"])
        assert result.exit_code == 0
        assert read_report(out)["values"]["inv"]["scalar"]["terms"] == [{"c": "1/2", "lambda": "0", "mu": 0}]


class TestNumericalCommands:
    def test_dehn(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["dehn", "--n", "1", "--lambda", "0.5", "--samples", "20",
                                     "--out", str(out), "-q"])
        assert result.exit_code == 0
        report = read_report(out)
        assert report["dehn"]["passed"] is True
        assert report["dehn"]["samples"] == 20

    def test_dehn_plateau_is_negative(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["dehn", "--lambda", "0.5", "--samples", "5", "--profile", "plateau",
                                     "--param", "level=0.02", "--out", str(out), "-q"])
        assert result.exit_code == 1
        assert read_report(out)["dehn"]["wobbly"] is False

    def test_dehn_invalid_profile(self, runner):
        result = runner.invoke(app, ["dehn", "--profile", "spiral", "--samples", "2"])
        assert result.exit_code == 2

    def test_index(self, runner, tmp_path):
        path = write_json_file(tmp_path / "q.json", {"path": {"generator": "rotation", "start": [0], "end": [2]}})
        out = tmp_path / "report.json"
        result = runner.invoke(app, ["index", "loop", str(path), "--out", str(out), "-q"])
        assert result.exit_code == 0
        assert read_report(out)["index"]["value"] == "2"

    def test_index_unknown_mode(self, runner, tmp_path):
        path = write_json_file(tmp_path / "q.json", {})
        result = runner.invoke(app, ["index", "winding", str(path)])
        assert result.exit_code == 2


class TestGenerateFixture:
    def test_same_seed_same_bytes(self, runner, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for path in (first, second):
            result = runner.invoke(app, ["generate-fixture", "gapped-complex", "--seed", "7", "--out", str(path), "-q"])
            assert result.exit_code == 0
        assert first.read_bytes() == second.read_bytes()

    def test_check_flag(self, runner, tmp_path):
        out = tmp_path / "t.json"
        result = runner.invoke(app, ["generate-fixture", "triangle", "--out", str(out), "--check"])
        assert result.exit_code == 0
        assert "passes its validator" in result.output

    def test_unknown_kind(self, runner):
        result = runner.invoke(app, ["generate-fixture", "spiral"])
        assert result.exit_code == 2


class TestRunCommand:
    def test_yaml_run(self, runner, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text(yaml.safe_dump({"command": "dehn", "twist_lambda": 0.5, "samples": 5,
                                          "output": "report.json"}))
        result = runner.invoke(app, ["run", str(config), "-q"])
        assert result.exit_code == 0
        assert read_report(tmp_path / "report.json")["command"] == "dehn"

    def test_validate_only(self, runner, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text(yaml.safe_dump({"command": "dehn"}))
        result = runner.invoke(app, ["run", str(config), "--validate-only"])
        assert result.exit_code == 0
        assert "Configuration is valid" in result.output

    def test_invalid_config(self, runner, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text(yaml.safe_dump({"command": "spectral"}))
        result = runner.invoke(app, ["run", str(config)])
        assert result.exit_code == 2

    @patch.object(RunWorkflow, "compute", side_effect=RuntimeError("boom"))
    def test_internal_failure(self, mock_compute, runner, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text(yaml.safe_dump({"command": "dehn"}))
        result = runner.invoke(app, ["run", str(config)])
        assert result.exit_code == 3
        mock_compute.assert_called_once()


class TestErrorHandling:
    @pytest.mark.parametrize("error,code", [
        (VerifiedNegative("no"), 1),
        (ExactnessFailure("not exact", 2, {2: 1}), 1),
        (NotStabilized("still moving"), 1),
        (InputError("bad", "/x"), 2),
        (NonGapped("lowers filtration"), 2),
        (ConfigurationError("bad yaml"), 2),
        (yaml.YAMLError("bad"), 2),
        (CertificationError("disagree"), 3),
        (RuntimeError("oops"), 3),
    ])
    def test_exit_codes(self, error, code):
        assert exit_code_for(error) == code

    def test_suggestions_by_error_type(self):
        assert any("JSON pointer" in s for s in _get_recovery_suggestions(InputError("bad", "/x")))
        assert any("--lambda0" in s for s in _get_recovery_suggestions(NonGapped("x")))
        assert any("--verbose" in s for s in _get_recovery_suggestions(RuntimeError("x")))

    def test_plain_error_message(self):
        message = _generate_error_message(InputError("bad", "/x"), no_color=True)
        assert message.startswith("InputError: bad (at '/x')")
        assert "Suggested Solutions:" in message
        assert "[bold" not in message

    def test_unexpected_error_label(self):
        assert _generate_error_message(RuntimeError("oops"), no_color=True).startswith("Unexpected error: oops")


class TestParseProfileParams:
    def test_pairs(self):
        assert parse_profile_params(["level=0.02"]) == {"level": 0.02}
        assert parse_profile_params(None) == {}

    @pytest.mark.parametrize("item", ["level", "=1", "level=high"])
    def test_malformed(self, item):
        with pytest.raises(ConfigurationError):
            parse_profile_params([item])
