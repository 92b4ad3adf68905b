"""
Tests for the run.py launcher in the project root.
"""

import runpy
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

PROJECT_ROOT = Path(__file__).parent.parent
RUN_PY = PROJECT_ROOT / "run.py"


class TestRunPyScript:
    def setup_method(self):
        self.original_sys_path = sys.path.copy()

    def teardown_method(self):
        sys.path[:] = self.original_sys_path

    def test_script_exists(self):
        assert RUN_PY.is_file()
        assert (PROJECT_ROOT / "src" / "flesta" / "__init__.py").is_file()

    def test_adds_src_to_path(self):
        src = str(PROJECT_ROOT / "src")
        sys.path[:] = [p for p in sys.path if p != src]
        namespace = runpy.run_path(str(RUN_PY), run_name="flesta_launcher")
        assert sys.path[0] == src
        assert namespace["SRC_PATH"] == PROJECT_ROOT / "src"

    def test_does_not_duplicate_src(self):
        runpy.run_path(str(RUN_PY), run_name="flesta_launcher")
        runpy.run_path(str(RUN_PY), run_name="flesta_launcher")
        assert sys.path.count(str(PROJECT_ROOT / "src")) == 1

    @patch("flesta.cli.cli_main")
    def test_main_invokes_cli(self, mock_cli_main):
        runpy.run_path(str(RUN_PY), run_name="__main__")
        mock_cli_main.assert_called_once_with()

    @pytest.mark.parametrize("command", ["spectral", "dehn", "generate-fixture"])
    def test_usage_mentions_commands(self, command):
        assert command in RUN_PY.read_text(encoding="utf-8")
