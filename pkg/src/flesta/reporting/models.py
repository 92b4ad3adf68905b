"""Data models for command reports."""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ReportConfig(BaseModel):
    """Configuration for report generation."""

    model_config = ConfigDict(extra="forbid")

    output: Optional[Path] = Field(None, description="File for the JSON report; stdout when omitted")
    quiet: bool = Field(False, description="Suppress the terminal summary")
    color_output: bool = Field(True, description="Whether to use colored terminal output")


class SummaryTable(BaseModel):
    """A small table shown under the summary, e.g. the ranks of one page."""

    title: str
    columns: List[str]
    rows: List[List[str]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_widths(self) -> "SummaryTable":
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row {row} does not match columns {self.columns}")
        return self


class CommandReport(BaseModel):
    """What one command produced.

    ``payload`` is the machine-readable body and is written as is; ``summary``
    and ``tables`` only feed the terminal view.
    """

    model_config = ConfigDict(extra="forbid")

    command: str
    verdict: Literal["ok", "negative"] = "ok"
    title: str = ""
    payload: Dict[str, Any] = Field(default_factory=dict)
    summary: List[Tuple[str, str]] = Field(default_factory=list)
    tables: List[SummaryTable] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_payload(self) -> "CommandReport":
        reserved = {"command", "verdict"} & set(self.payload)
        if reserved:
            raise ValueError(f"payload may not use reserved keys {sorted(reserved)}")
        return self

    @property
    def is_negative(self) -> bool:
        return self.verdict == "negative"

    @property
    def exit_code(self) -> int:
        return 1 if self.is_negative else 0

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"command": self.command, "verdict": self.verdict}
        data.update(self.payload)
        return data
