"""FLESTA Reporting Module - Strategy Pattern Implementation."""

from ..exceptions import ReportingError
from .format_utils import (
    create_detail_table,
    create_summary_table,
    format_flag,
    format_residual,
    get_verdict_color,
    rank_grid,
    residual_table,
)
from .main import ReportingOrchestrator, generate_complete_report
from .models import CommandReport, ReportConfig, SummaryTable
from .reporters import BaseReporter, JsonReporter, TerminalReporter

__all__ = [
    "BaseReporter",
    "CommandReport",
    "JsonReporter",
    "ReportConfig",
    "ReportingError",
    "ReportingOrchestrator",
    "SummaryTable",
    "TerminalReporter",
    "create_detail_table",
    "create_summary_table",
    "format_flag",
    "format_residual",
    "generate_complete_report",
    "get_verdict_color",
    "rank_grid",
    "residual_table",
]
