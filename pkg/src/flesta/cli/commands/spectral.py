import logging
from pathlib import Path
from typing import Optional

import typer

from ..utils import build_run_config, configure_logging, handle_cli_errors, run_and_exit

logger = logging.getLogger(__name__)


@handle_cli_errors
def spectral(
    complex_file: Path = typer.Argument(..., exists=True, dir_okay=False, readable=True,
                                        help="Filtered complex in the JSON complex format"),
    lambda0: Optional[str] = typer.Option(None, "--lambda0", help="Filtration step λ₀ as 'p/q' (default: derived from the gap)."),
    r_max: Optional[int] = typer.Option(None, "--r-max", help="Last page to compute (default: ⌊cap/λ₀⌋)."),
    epsilon: Optional[str] = typer.Option(None, "--epsilon", help="Threshold for the thin-part vanishing criterion."),
    cap: Optional[str] = typer.Option(None, "--cap", help="Energy cap overriding the document's cap."),
    seed: int = typer.Option(0, "--seed", help="Seed recorded with the run."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the JSON report here instead of stdout."),
    tolerance_profile: str = typer.Option("default", "--tolerance-profile", help="default or strict."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress the terminal summary."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Compute the spectral sequence pages of a gapped filtered complex.
    """
    configure_logging(verbose)
    config = build_run_config(command="spectral", inputs=[complex_file], lambda0=lambda0, r_max=r_max,
                              epsilon=epsilon, cap=cap, seed=seed, output=out,
                              tolerance_profile=tolerance_profile)
    run_and_exit(config, quiet, no_color)
