"""Utility functions for formatting report data."""

import math
from typing import Dict, Iterable, List, Tuple, Union

from rich import box
from rich.markup import escape
from rich.table import Table

from .models import CommandReport, SummaryTable

Cell = Tuple[int, int]


def format_residual(value: float, significant: int = 3) -> str:
    """Scientific notation for residuals; 'inf'/'nan' are spelled out."""
    if value is None or math.isnan(value):
        return "N/A"
    if math.isinf(value):
        return "inf"
    if value == 0:
        return "0"
    return f"{value:.{significant - 1}e}"


def format_flag(value: bool) -> str:
    return "yes" if value else "no"


def get_verdict_color(verdict: str) -> str:
    return "bold green" if verdict == "ok" else "bold red"


def rank_grid(title: str, ranks: Dict[Cell, int]) -> SummaryTable:
    """Degrees p as rows and filtration layers q as columns; empty cells are blank."""
    if not ranks:
        return SummaryTable(title=title, columns=["p"], rows=[])
    ps = sorted({p for p, _ in ranks})
    qs = sorted({q for _, q in ranks})
    rows: List[List[str]] = []
    for p in ps:
        row = [str(p)]
        for q in qs:
            r = ranks.get((p, q), 0)
            row.append(str(r) if r else "")
        rows.append(row)
    return SummaryTable(title=title, columns=["p"] + [f"q={q}" for q in qs], rows=rows)


def residual_table(title: str, checks: Iterable[Tuple[str, float, float, bool, bool]]) -> SummaryTable:
    """Rows (name, residual, tolerance, passed, informational)."""
    rows = []
    for name, residual, tolerance, passed, informational in checks:
        status = "info" if informational else ("PASS" if passed else "FAIL")
        rows.append([name, format_residual(residual), format_residual(tolerance), status])
    return SummaryTable(title=title, columns=["Check", "Residual", "Tolerance", "Status"], rows=rows)


def create_summary_table(report: CommandReport, color_output: bool = True) -> Table:
    table = Table(title=report.title or f"flesta {report.command}", box=box.ROUNDED)
    table.add_column("Item", style="cyan" if color_output else None, no_wrap=True)
    table.add_column("Value", style="green" if color_output else None)
    for label, value in report.summary:
        table.add_row(escape(label), escape(value))
    verdict_style = get_verdict_color(report.verdict) if color_output else None
    table.add_row("Verdict", report.verdict, style=verdict_style)
    return table


def create_detail_table(detail: SummaryTable, color_output: bool = True) -> Table:
    table = Table(title=detail.title, box=box.ROUNDED)
    for i, column in enumerate(detail.columns):
        style = "cyan" if color_output and i == 0 else None
        table.add_column(column, style=style, no_wrap=i == 0)
    for row in detail.rows:
        style: Union[str, None] = None
        if color_output and row and row[-1] == "FAIL":
            style = "red"
        table.add_row(*(escape(x) for x in row), style=style)
    return table
