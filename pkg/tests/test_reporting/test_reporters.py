"""Tests for the JSON and terminal reporters and the orchestrator."""

import json
from unittest.mock import MagicMock, patch

import pytest

from flesta.exceptions import ReportingError
from flesta.reporting import (
    BaseReporter,
    CommandReport,
    JsonReporter,
    ReportConfig,
    ReportingOrchestrator,
    SummaryTable,
    TerminalReporter,
    generate_complete_report,
)


@pytest.fixture
def report():
    return CommandReport(
        command="spectral",
        title="Spectral sequence",
        payload={"stabilized_at": 2, "lambda0": "1"},
        summary=[("Stabilized at", "E_2")],
        tables=[SummaryTable(title="E_1 ranks", columns=["p", "q=0"], rows=[["0", "1"], ["1", "1"]])],
        notes=["cap reached"],
    )


class TestJsonReporter:
    def test_writes_file(self, tmp_path, report):
        reporter = JsonReporter(tmp_path / "nested" / "report.json")
        reporter.generate_report(report)
        assert reporter.written == tmp_path / "nested" / "report.json"
        data = json.loads(reporter.written.read_text(encoding="utf-8"))
        assert data == {"command": "spectral", "verdict": "ok", "stabilized_at": 2, "lambda0": "1"}

    def test_output_is_deterministic(self, tmp_path, report):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        JsonReporter(first).generate_report(report)
        JsonReporter(second).generate_report(report)
        assert first.read_bytes() == second.read_bytes()
        assert first.read_text(encoding="utf-8").endswith("\n")

    def test_writes_stdout(self, capsys, report):
        JsonReporter().generate_report(report)
        assert json.loads(capsys.readouterr().out)["stabilized_at"] == 2

    def test_unserializable_payload(self, capsys):
        bad = CommandReport(command="index", payload={"value": object()})
        with pytest.raises(ReportingError, match="not JSON serializable"):
            JsonReporter().generate_report(bad)


class TestTerminalReporter:
    @patch('rich.console.Console.print')
    def test_prints_summary_tables_and_notes(self, mock_print, report):
        TerminalReporter(color_output=False).generate_report(report)
        assert mock_print.call_count == 3
        assert "cap reached" in mock_print.call_args_list[-1].args[0]

    def test_console_failure_becomes_reporting_error(self, report):
        console = MagicMock()
        console.print.side_effect = RuntimeError("terminal closed")
        with pytest.raises(ReportingError, match="terminal closed"):
            TerminalReporter(console=console).generate_report(report)


class TestOrchestrator:
    def test_defaults_to_json(self, capsys, report):
        orchestrator = ReportingOrchestrator()
        orchestrator.generate_reports(report)
        assert isinstance(orchestrator.reporters[0], JsonReporter)
        assert '"stabilized_at": 2' in capsys.readouterr().out

    def test_reporter_errors_propagate(self, report):
        failing = MagicMock(spec=BaseReporter)
        failing.generate_report.side_effect = ReportingError("disk full")
        orchestrator = ReportingOrchestrator()
        orchestrator.add_reporter(failing)
        with pytest.raises(ReportingError, match="disk full"):
            orchestrator.generate_reports(report)

    @patch('flesta.reporting.main.TerminalReporter')
    def test_quiet_skips_terminal(self, mock_terminal, tmp_path, report):
        generate_complete_report(report, ReportConfig(output=tmp_path / "r.json", quiet=True))
        mock_terminal.assert_not_called()
        assert (tmp_path / "r.json").exists()

    @patch('rich.console.Console.print')
    def test_complete_report_prints_summary(self, mock_print, tmp_path, report):
        generate_complete_report(report, ReportConfig(output=tmp_path / "r.json"))
        assert mock_print.called
