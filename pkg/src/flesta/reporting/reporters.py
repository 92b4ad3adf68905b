"""Reporter implementations using Strategy Pattern."""

import logging
import sys
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.markup import escape

from ..exceptions import ReportingError
from ..serialization import dump_json, write_json_file
from .format_utils import create_detail_table, create_summary_table
from .models import CommandReport

logger = logging.getLogger(__name__)


class BaseReporter(ABC):
    """Protocol for all report generators."""

    @abstractmethod
    def generate_report(self, report: CommandReport) -> None:
        """Generate output for one command report."""
        pass


class TerminalReporter(BaseReporter):
    """Rich summary on stderr, so that stdout stays machine-readable."""

    def __init__(self, console: Optional[Console] = None, color_output: bool = True):
        self.color_output = color_output
        self.console = console or Console(stderr=True, color_system="auto" if color_output else None)

    def generate_report(self, report: CommandReport) -> None:
        try:
            self.console.print(create_summary_table(report, self.color_output))
            for detail in report.tables:
                self.console.print(create_detail_table(detail, self.color_output))
            for note in report.notes:
                self.console.print(f"[yellow]note:[/yellow] {escape(note)}" if self.color_output else f"note: {escape(note)}")
        except Exception as e:
            logger.error(f"Terminal reporting failed: {e}")
            raise ReportingError(f"Failed to generate terminal report: {e}")


class JsonReporter(BaseReporter):
    """Deterministic JSON report, written to a file or to stdout."""

    def __init__(self, output_path: Optional[Path] = None):
        self.output_path = Path(output_path) if output_path is not None else None
        self.written: Optional[Path] = None

    def generate_report(self, report: CommandReport) -> None:
        data = report.to_json()
        if self.output_path is None:
            try:
                sys.stdout.write(dump_json(data))
                sys.stdout.flush()
            except (TypeError, ValueError) as e:
                logger.error(f"JSON reporting failed: {e}")
                raise ReportingError(f"Report is not JSON serializable: {e}")
            return
        try:
            self.written = write_json_file(self.output_path, data)
        except (TypeError, ValueError) as e:
            logger.error(f"JSON reporting failed: {e}")
            raise ReportingError(f"Report is not JSON serializable: {e}")
        logger.info(f"Report written to {self.written}")
