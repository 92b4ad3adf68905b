"""Main reporting orchestrator."""

import logging
from typing import List, Optional

from .models import CommandReport, ReportConfig
from .reporters import BaseReporter, JsonReporter, TerminalReporter

logger = logging.getLogger(__name__)


class ReportingOrchestrator:
    """Orchestrates report generation using multiple reporters."""

    def __init__(self):
        self.reporters: List[BaseReporter] = []

    def add_reporter(self, reporter: BaseReporter) -> None:
        """Add a reporter to the orchestrator."""
        self.reporters.append(reporter)

    def generate_reports(self, report: CommandReport) -> None:
        """Generate all configured reports."""
        if not self.reporters:
            logger.warning("No reporters configured. Adding default JSON reporter.")
            self.add_reporter(JsonReporter())

        for reporter in self.reporters:
            try:
                reporter.generate_report(report)
            except Exception as e:
                logger.error(f"Reporter {type(reporter).__name__} failed: {e}")
                raise


def generate_complete_report(report: CommandReport, config: Optional[ReportConfig] = None) -> None:
    """Write the JSON report and, unless quiet, the terminal summary.

    Args:
        report: The command report.
        config: Output path and presentation flags; defaults write JSON to stdout.

    Raises:
        ReportingError: If a reporter fails.
    """
    config = config or ReportConfig()
    orchestrator = ReportingOrchestrator()
    orchestrator.add_reporter(JsonReporter(config.output))
    if not config.quiet:
        orchestrator.add_reporter(TerminalReporter(color_output=config.color_output))
    orchestrator.generate_reports(report)
