import logging
import sys
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from ...exceptions import ConfigurationError
from ...fixtures import get_fixture_registry
from ...serialization import dump_json, write_json_file
from ..utils import EXIT_NEGATIVE, configure_logging, handle_cli_errors

logger = logging.getLogger(__name__)


@handle_cli_errors
def generate_fixture(
    kind: str = typer.Argument(..., help="Fixture kind, e.g. gapped-complex, triangle, mc-solvable"),
    seed: int = typer.Option(0, "--seed", help="Seed of the generator."),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the fixture here instead of stdout."),
    check: bool = typer.Option(False, "--check", help="Run the owning module's validator on the fixture."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable verbose logging."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Suppress non-essential output."),
    no_color: bool = typer.Option(False, "--no-color", help="Disable colored terminal output."),
):
    """
    Write a seeded fixture; the same seed always gives the same bytes.
    """
    configure_logging(verbose)
    registry = get_fixture_registry()
    fixture_class = registry.get(kind)
    if fixture_class is None:
        available = ", ".join(registry.list_available())
        raise ConfigurationError(f"Unknown fixture kind '{kind}'. Available: {available}")

    obj = fixture_class.build(seed)
    if out is None:
        sys.stdout.write(dump_json(obj.to_json()))
    else:
        write_json_file(out, obj.to_json())

    console = Console(stderr=True, color_system=None if no_color else "auto")
    if check:
        if not fixture_class.validate(obj):
            console.print(f"[red]Fixture '{kind}' (seed {seed}) fails its validator[/red]")
            raise typer.Exit(code=EXIT_NEGATIVE)
        if not quiet:
            console.print(f"[green]Fixture '{kind}' (seed {seed}) passes its validator[/green]")
    if out is not None and not quiet:
        console.print(f"Wrote {out}")
