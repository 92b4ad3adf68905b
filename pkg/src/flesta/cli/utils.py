"""
CLI utility functions, including a reusable error handling decorator.

Exit codes: 0 success, 1 verified-negative result, 2 input or configuration
error, 3 internal failure.
"""

import functools
import logging
import traceback
from typing import Any, Dict, List

import typer
import yaml
from rich.console import Console
from rich.markup import escape

from ..config import RunConfig, validate_run_config
from ..exceptions import (
    AInftyError,
    CertificationError,
    ComplexError,
    ConfigurationError,
    DehnError,
    ExactnessFailure,
    FlestaError,
    HypothesisFailed,
    IndexLabError,
    InputError,
    NotAComplex,
    NotStabilized,
    NovikovError,
    ReportingError,
    SpectralError,
    VerifiedNegative,
    WorkflowError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

NEGATIVE_ERRORS = (VerifiedNegative, HypothesisFailed, ExactnessFailure, NotAComplex, NotStabilized)
INTERNAL_ERRORS = (CertificationError, ReportingError, WorkflowError)


def configure_logging(verbose: bool = False) -> None:
    if verbose:
        logging.getLogger("flesta").setLevel(logging.DEBUG)


def build_run_config(**fields: Any) -> RunConfig:
    """RunConfig from command flags; unset (None) flags keep their defaults."""
    data: Dict[str, Any] = {k: v for k, v in fields.items() if v is not None}
    return validate_run_config(data)


def _get_recovery_suggestions(exception: Exception) -> List[str]:
    suggestions: List[str] = []
    if isinstance(exception, (ConfigurationError, yaml.YAMLError)):
        suggestions.extend([
            "Verify the YAML file syntax is correct",
            "Check that 'command' is one of the documented subcommands",
            "Ensure rationals are written as integers or 'p/q' strings",
            "Try using --validate-only to validate configuration without execution",
        ])
    elif isinstance(exception, InputError):
        suggestions.extend([
            "Open the input file at the reported JSON pointer",
            "Rationals must be integers or 'p/q' strings, never floats",
            "Novikov terms must be strictly increasing in (lambda, mu)",
            "Use 'flesta generate-fixture' to produce a valid example document",
        ])
    elif isinstance(exception, SpectralError):
        suggestions.extend([
            "Check that no differential term lowers the filtration",
            "Choose --lambda0 no larger than the gap of the complex",
            "Raise --cap or lower --r-max so that the pages fit below the cap",
        ])
    elif isinstance(exception, IndexLabError):
        suggestions.extend([
            "Sample the path more finely (consecutive frames must be close)",
            "Check that every frame spans a Lagrangian subspace",
            "Loops and squares must close up at their corners",
        ])
    elif isinstance(exception, DehnError):
        suggestions.extend([
            "Use --lambda in (0, 1] and a positive --delta",
            "List the registered profiles in the documentation",
        ])
    elif isinstance(exception, (NovikovError, ComplexError, AInftyError)):
        suggestions.extend([
            "Check degrees and levels of the generators against the operations",
            "Bounding cochains must have degree one and positive valuation",
        ])
    elif isinstance(exception, ReportingError):
        suggestions.extend([
            "Check that the output directory exists and is writable",
            "Ensure you have sufficient disk space",
        ])
    else:
        suggestions.extend([
            "Try running with --verbose for more details",
            "Verify all dependencies are properly installed",
            "Try running 'flesta version' to check the installation",
        ])
    return suggestions


def _generate_error_message(exception: Exception, verbose: bool = False, no_color: bool = False) -> str:
    if isinstance(exception, FlestaError):
        error_type = type(exception).__name__
    else:
        error_type = "Unexpected error"
    error_msg = escape(str(exception))
    if no_color:
        message_parts = [f"{error_type}: {error_msg}"]
    else:
        message_parts = [f"[bold red]{error_type}:[/bold red] {error_msg}"]
    suggestions = _get_recovery_suggestions(exception)
    if suggestions:
        message_parts.append("\nSuggested Solutions:" if no_color else "\n[bold yellow]Suggested Solutions:[/bold yellow]")
        for suggestion in suggestions:
            message_parts.append(f"  • {suggestion}")
    if verbose:
        if no_color:
            message_parts.append("\nDebug Information:")
            message_parts.append(traceback.format_exc())
        else:
            message_parts.append("\n[bold underline]Debug Information:[/bold underline]")
            message_parts.append(f"[dim]{escape(traceback.format_exc())}[/dim]")
    return "\n".join(message_parts)


def exit_code_for(exception: Exception) -> int:
    if isinstance(exception, NEGATIVE_ERRORS):
        return EXIT_NEGATIVE
    if isinstance(exception, INTERNAL_ERRORS):
        return EXIT_INTERNAL
    if isinstance(exception, (FlestaError, yaml.YAMLError)):
        return EXIT_INPUT
    return EXIT_INTERNAL


def handle_cli_errors(func: Any) -> Any:
    """
    A decorator to wrap CLI commands with standard error handling.

    FlestaError subclasses and other exceptions are logged, printed with
    recovery suggestions on stderr, and turned into the documented exit code.
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        verbose = kwargs.get("verbose", False)
        no_color = kwargs.get("no_color", False)

        console = Console(stderr=True, color_system=None if no_color else "auto")

        try:
            return func(*args, **kwargs)
        except typer.Exit:
            raise  # Re-raise Exit exceptions to let typer/click handle them
        except Exception as e:
            exit_code = exit_code_for(e)
            if exit_code == EXIT_INTERNAL and not isinstance(e, FlestaError):
                logger.error(f"An unexpected error occurred: {e}", exc_info=verbose)
            else:
                logger.error(f"{type(e).__name__}: {e}", exc_info=verbose)
            if isinstance(e, InputError) and e.pointer:
                logger.debug(f"JSON pointer of the failure: {e.pointer}")
            console.print(_generate_error_message(e, verbose=verbose, no_color=no_color))
            raise typer.Exit(code=exit_code)

    return wrapper


def run_and_exit(config: RunConfig, quiet: bool = False, no_color: bool = False) -> None:
    """Run the workflow; a verified-negative report ends the command with exit code 1."""
    from ..workflows import RunWorkflow

    report = RunWorkflow(config, {"quiet": quiet, "no_color": no_color}).execute()
    if report.is_negative:
        logger.info(f"'{config.command.value}' finished with a negative verdict")
        raise typer.Exit(code=EXIT_NEGATIVE)
