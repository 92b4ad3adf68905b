import logging
from pathlib import Path
from typing import Optional

import typer

from ..utils import build_run_config, configure_logging, handle_cli_errors, run_and_exit

logger = logging.getLogger(__name__)


@handle_cli_errors
def novikov_eval(
    expression_file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True,
                                           help="Expression file {scalars, steps}"),
    cap: Optional[str] = typer.Option(None, "--cap", help="Energy cap for inputs and inversions."),
    seed: int = typer.Option(0, "--seed", help="Seed recorded with the run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Evaluate a file of Novikov ring expressions.
    """
    configure_logging(verbose)
    config = build_run_config(command="novikov-eval", inputs=[expression_file], cap=cap, seed=seed,
                              output=out, tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)
