"""Tests for run configuration loading and validation."""

from fractions import Fraction
from pathlib import Path

import pytest
import yaml

from flesta.config import (
    Command,
    RunConfig,
    ToleranceProfile,
    get_tolerance_profile,
    load_yaml_config,
    validate_run_config,
)
from flesta.exceptions import ConfigurationError


@pytest.fixture
def spectral_config_data():
    return {"command": "spectral", "inputs": ["complex.json"], "cap": "10", "lambda0": "1/2", "r_max": 4}


class TestRunConfig:
    def test_parses_rationals(self, spectral_config_data):
        config = RunConfig(**spectral_config_data)
        assert config.command is Command.SPECTRAL
        assert config.cap == Fraction(10)
        assert config.lambda0 == Fraction(1, 2)
        assert config.inputs == [Path("complex.json")]

    def test_yaml_floats_become_exact(self):
        config = RunConfig(command="spectral", inputs=["c.json"], lambda0=0.1)
        assert config.lambda0 == Fraction(1, 10)

    @pytest.mark.parametrize("cap", ["0", "-1/2"])
    def test_cap_must_be_positive(self, cap):
        with pytest.raises(ValueError, match="cap must be positive"):
            RunConfig(command="spectral", inputs=["c.json"], cap=cap)

    @pytest.mark.parametrize("value", ["one half", True])
    def test_rejects_non_rationals(self, value):
        with pytest.raises(ValueError):
            RunConfig(command="spectral", inputs=["c.json"], epsilon=value)

    def test_input_required(self):
        with pytest.raises(ValueError, match="requires an input file"):
            RunConfig(command="triangle")

    def test_dehn_needs_no_input(self):
        config = RunConfig(command="dehn", twist_lambda=0.5)
        assert config.n == 1
        assert config.samples == 200

    def test_index_mode_checked(self):
        with pytest.raises(ValueError, match="index mode"):
            RunConfig(command="index", inputs=["q.json"], mode="winding")

    def test_unknown_fields_forbidden(self):
        with pytest.raises(ValueError):
            RunConfig(command="dehn", colour="red")

    def test_twist_lambda_bounds(self):
        with pytest.raises(ValueError):
            RunConfig(command="dehn", twist_lambda=1.5)

    def test_tolerances_follow_profile(self):
        config = RunConfig(command="dehn", tolerance_profile="strict")
        assert config.tolerances.symplectic == 1e-7


class TestToleranceProfiles:
    def test_default(self):
        profile = get_tolerance_profile()
        assert isinstance(profile, ToleranceProfile)
        assert profile.symplectic == 1e-6
        assert profile.exactness == 1e-4
        assert profile.flow == 1e-9

    def test_unknown(self):
        with pytest.raises(ConfigurationError, match="Available: default, strict"):
            get_tolerance_profile("loose")

    def test_profiles_are_frozen(self):
        with pytest.raises(ValueError):
            get_tolerance_profile().symplectic = 1.0


class TestYamlLoading:
    def test_load_and_validate(self, tmp_path, spectral_config_data):
        path = tmp_path / "run.yaml"
        path.write_text(yaml.safe_dump(spectral_config_data))
        config = validate_run_config(load_yaml_config(path), base_dir=tmp_path)
        assert config.inputs == [tmp_path / "complex.json"]

    def test_relative_output_resolved(self, tmp_path):
        config = validate_run_config({"command": "dehn", "output": "out/report.json"}, base_dir=tmp_path)
        assert config.output == tmp_path / "out" / "report.json"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_yaml_config(tmp_path / "absent.yaml")

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        with pytest.raises(ConfigurationError, match="Empty"):
            load_yaml_config(path)

    def test_non_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- spectral\n- triangle\n")
        with pytest.raises(ConfigurationError, match="mapping"):
            load_yaml_config(path)

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("command: [spectral\n")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            load_yaml_config(path)

    def test_validation_errors_are_configuration_errors(self):
        with pytest.raises(ConfigurationError, match="validation failed"):
            validate_run_config({"command": "nothing"})
