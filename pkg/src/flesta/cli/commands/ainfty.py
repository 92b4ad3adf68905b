"""A∞ commands: relation check, Maurer-Cartan solver and deformation."""

import logging
from pathlib import Path
from typing import Optional

import typer

from ..utils import build_run_config, configure_logging, handle_cli_errors, run_and_exit

logger = logging.getLogger(__name__)


@handle_cli_errors
def ainfty_check(
    algebra_file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True,
                                        help="A∞ algebra (or bimodule) in the JSON A∞ format"),
    k_max: Optional[int] = typer.Option(None, "--k-max", help="Check relations on tuples up to this length."),
    cap: Optional[str] = typer.Option(None, "--cap", help="Energy cap overriding the document's cap."),
    seed: int = typer.Option(0, "--seed", help="Seed recorded with the run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Verify the A∞ relations below the cap.
    """
    configure_logging(verbose)
    config = build_run_config(command="ainfty-check", inputs=[algebra_file], k_max=k_max, cap=cap, seed=seed,
                              output=out, tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)


@handle_cli_errors
def mc_solve(
    algebra_file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True,
                                        help="Curved A∞ algebra in the JSON A∞ format"),
    cap: Optional[str] = typer.Option(None, "--cap", help="Solve below this energy."),
    seed: int = typer.Option(0, "--seed", help="Seed recorded with the run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Solve the Maurer-Cartan equation; exits with 1 when obstructed.
    """
    configure_logging(verbose)
    config = build_run_config(command="mc-solve", inputs=[algebra_file], cap=cap, seed=seed, output=out,
                              tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)


@handle_cli_errors
def deform(
    algebra_file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True,
                                        help="A∞ algebra in the JSON A∞ format"),
    cochain_file: Optional[Path] = typer.Argument(None, exists=True, dir_okay=False, readable=True,
                                                  help="Bounding cochain {\"b\": [...]}; solved for when omitted"),
    cap: Optional[str] = typer.Option(None, "--cap", help="Energy cap overriding the document's cap."),
    seed: int = typer.Option(0, "--seed", help="Seed recorded with the run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Deform the operations by a bounding cochain and check m₀ᵇ = 0 and (m₁ᵇ)² = 0.
    """
    configure_logging(verbose)
    inputs = [algebra_file] + ([cochain_file] if cochain_file is not None else [])
    config = build_run_config(command="deform", inputs=inputs, cap=cap, seed=seed, output=out,
                              tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)
