import logging
from pathlib import Path
from typing import List, Optional

import typer

from ...exceptions import ConfigurationError
from ..utils import build_run_config, configure_logging, handle_cli_errors, run_and_exit

logger = logging.getLogger(__name__)


def parse_profile_params(values: Optional[List[str]]) -> dict:
    """'name=value' pairs to a dict of floats."""
    params = {}
    for item in values or []:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigurationError(f"profile parameter '{item}' is not of the form name=value")
        try:
            params[key.strip()] = float(raw)
        except ValueError:
            raise ConfigurationError(f"profile parameter '{key}' has a non-numeric value '{raw}'")
    return params


@handle_cli_errors
def dehn(
    n: int = typer.Option(1, "--n", help="Dimension of the sphere Sⁿ."),
    twist_lambda: float = typer.Option(1.0, "--lambda", help="Support radius λ in (0, 1]."),
    delta: float = typer.Option(0.01, "--delta", help="Wobble parameter δ ('inf' for none)."),
    samples: int = typer.Option(200, "--samples", help="Random sample points per check."),
    profile: str = typer.Option("default", "--profile", help="Registered twist profile."),
    param: Optional[List[str]] = typer.Option(None, "--param", help="Profile parameter name=value (repeatable)."),
    seed: int = typer.Option(0, "--seed", help="Seed for the sample points."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Verify the model Dehn twist identities numerically.
    """
    configure_logging(verbose)
    config = build_run_config(command="dehn", n=n, twist_lambda=twist_lambda, delta=delta, samples=samples,
                              profile=profile, profile_params=parse_profile_params(param), seed=seed,
                              output=out, tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)
