"""
Configuration module for FLESTA.

This module holds the numerical tolerance profiles and the run configuration
consumed by the workflow layer, and loads run configurations from YAML files.
"""

import logging
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class ToleranceProfile(BaseModel):
    """Numerical tolerances used by the floating-point modules (index_lab, dehn)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "default"
    lagrangian: float = Field(1e-10, gt=0, description="Residual of frameᵀ·J₀·frame accepted as Lagrangian.")
    closure: float = Field(1e-9, gt=0, description="Argument tolerance for closure and lattice tests.")
    tangency: float = Field(1e-12, gt=0, description="Drift that triggers re-projection onto T*Sⁿ.")
    projection_warn: float = Field(1e-9, gt=0, description="Re-projection size that is logged as a warning.")
    fd_step: float = Field(1e-5, gt=0, description="Central finite-difference step.")
    symplectic: float = Field(1e-6, gt=0)
    exactness: float = Field(1e-4, gt=0)
    pullback: float = Field(1e-4, gt=0)
    equivariance: float = Field(1e-10, gt=0)
    functional_equation: float = Field(1e-12, gt=0)
    endpoint: float = Field(1e-12, gt=0, description="Exactness of σ at t = 0 and t = π.")
    flow: float = Field(1e-9, gt=0, description="Residual of σ_s∘σ_t against σ_{s+t}.")


TOLERANCE_PROFILES: Dict[str, ToleranceProfile] = {
    "default": ToleranceProfile(),
    "strict": ToleranceProfile(
        name="strict",
        symplectic=1e-7,
        exactness=1e-5,
        pullback=1e-5,
    ),
}


def get_tolerance_profile(name: str = "default") -> ToleranceProfile:
    """Return a named tolerance profile.

    Raises:
        ConfigurationError: If the profile name is unknown.
    """
    try:
        return TOLERANCE_PROFILES[name]
    except KeyError:
        raise ConfigurationError(
            f"Unknown tolerance profile '{name}'. Available: {', '.join(sorted(TOLERANCE_PROFILES))}"
        )


class Command(str, Enum):
    """Subcommands that a run configuration can dispatch to."""

    SPECTRAL = "spectral"
    TRIANGLE = "triangle"
    AINFTY_CHECK = "ainfty-check"
    MC_SOLVE = "mc-solve"
    DEFORM = "deform"
    INDEX = "index"
    DEHN = "dehn"
    NOVIKOV_EVAL = "novikov-eval"


def _parse_rational(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{value}' is not a rational of the form p/q") from e
    if isinstance(value, float):
        # YAML gives floats for "0.5"; take the shortest decimal it denotes
        return Fraction(repr(value))
    raise ValueError(f"cannot read a rational from {type(value).__name__}")


class RunConfig(BaseModel):
    """Configuration of a single CLI run.

    The same model backs the individual subcommands (built from flags) and the
    ``run`` subcommand (loaded from YAML).
    """

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    command: Command
    inputs: List[Path] = Field(default_factory=list)
    cap: Optional[Fraction] = None
    seed: int = 0
    output: Optional[Path] = None
    tolerance_profile: Literal["default", "strict"] = "default"

    # command specific options
    r_max: Optional[int] = Field(None, ge=1)
    lambda0: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    k_max: Optional[int] = Field(None, ge=0)
    mode: Optional[str] = None
    n: int = Field(1, ge=1)
    twist_lambda: float = Field(1.0, gt=0, le=1)
    delta: float = Field(0.01, gt=0)
    samples: int = Field(200, ge=1)
    profile: str = "default"
    profile_params: Dict[str, float] = Field(default_factory=dict)

    @field_validator("cap", "lambda0", "epsilon", mode="before")
    @classmethod
    def parse_rationals(cls, v: Any) -> Optional[Fraction]:
        if v is None:
            return None
        return _parse_rational(v)

    @field_validator("cap")
    @classmethod
    def cap_must_be_positive(cls, v: Optional[Fraction]) -> Optional[Fraction]:
        if v is not None and v <= 0:
            raise ValueError("cap must be positive")
        return v

    @model_validator(mode="after")
    def check_inputs(self) -> "RunConfig":
        needs_input = {
            Command.SPECTRAL, Command.TRIANGLE, Command.AINFTY_CHECK,
            Command.MC_SOLVE, Command.DEFORM, Command.INDEX, Command.NOVIKOV_EVAL,
        }
        if self.command in needs_input and not self.inputs:
            raise ValueError(f"command '{self.command.value}' requires an input file")
        if self.command == Command.INDEX and self.mode not in {"loop", "rs", "mm", "dim"}:
            raise ValueError("index mode must be one of loop, rs, mm, dim")
        return self

    @property
    def tolerances(self) -> ToleranceProfile:
        return get_tolerance_profile(self.tolerance_profile)


def load_yaml_config(file_path: Union[str, Path]) -> Dict[str, Any]:
    """Load a YAML configuration file.

    Args:
        file_path: Path to the YAML configuration file

    Returns:
        A dictionary containing the parsed YAML configuration

    Raises:
        ConfigurationError: If the file can't be found or contains invalid YAML
    """
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            config_data = yaml.safe_load(file)
            if not config_data:
                raise ConfigurationError("Empty configuration file")
            if not isinstance(config_data, dict):
                raise ConfigurationError("Configuration must be a mapping")
            return config_data
    except FileNotFoundError:
        raise ConfigurationError(f"Configuration file not found: {file_path}")
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in configuration: {str(e)}")
    except ConfigurationError:
        raise
    except Exception as e:
        raise ConfigurationError(f"Error loading configuration: {str(e)}")


def validate_run_config(config_data: Dict[str, Any], base_dir: Optional[Path] = None) -> RunConfig:
    """Validate a raw mapping into a RunConfig.

    Relative input and output paths are resolved against ``base_dir`` (the
    directory of the YAML file) when given.

    Raises:
        ConfigurationError: If validation fails.
    """
    try:
        config = RunConfig(**config_data)
    except ValidationError as e:
        raise ConfigurationError(f"Configuration validation failed: {e}")
    if base_dir is not None:
        inputs = [p if p.is_absolute() else base_dir / p for p in config.inputs]
        output = config.output
        if output is not None and not output.is_absolute():
            output = base_dir / output
        config = config.model_copy(update={"inputs": inputs, "output": output})
    logger.debug(f"Validated run configuration for command '{config.command.value}'")
    return config
