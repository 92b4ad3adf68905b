"""Command-line interface for FLESTA."""

import logging

import typer
from rich.console import Console

from .. import __version__
from .commands import (
    ainfty_check,
    deform,
    dehn,
    generate_fixture,
    index,
    mc_solve,
    novikov_eval,
    run,
    spectral,
    triangle,
)
from .utils import _generate_error_message, _get_recovery_suggestions, handle_cli_errors

app = typer.Typer(
    name="flesta",
    help="FLESTA - Filtered Long Exact Sequence Toolkit & Analysis\n\n"
         "Exact Novikov arithmetic, spectral sequences of gapped complexes, exact triangles, "
         "A∞ structures, Maslov-type indices and a verified model Dehn twist.",
    no_args_is_help=True,
    add_completion=False,
    rich_markup_mode="rich",
    context_settings={"help_option_names": ["-h", "--help"]},
)

console = Console()

# Configure logging
logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[logging.StreamHandler()],
)

app.command("spectral")(spectral)
app.command("triangle")(triangle)
app.command("ainfty-check")(ainfty_check)
app.command("mc-solve")(mc_solve)
app.command("deform")(deform)
app.command("index")(index)
app.command("dehn")(dehn)
app.command("novikov-eval")(novikov_eval)
app.command("generate-fixture")(generate_fixture)
app.command("run")(run)


@app.command("version")
def version_command():
    """Display version information."""
    console.print(f"FLESTA version: {__version__}")


def cli_main():
    """Main entry point for the CLI application."""
    app()


if __name__ == "__main__":
    cli_main()


__all__ = [
    "app",
    "cli_main",
    "handle_cli_errors",
    "_generate_error_message",
    "_get_recovery_suggestions",
]
