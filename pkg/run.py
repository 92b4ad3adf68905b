#!/usr/bin/env python3
"""
FLESTA Runner - Simple entry point for the Filtered Long Exact Sequence Toolkit & Analysis

This script provides a convenient way to run FLESTA from the project root directory.
It automatically handles the Python path and imports to make running the CLI straightforward.

Usage:
    python run.py spectral complex.json
    python run.py dehn --n 1 --lambda 0.5
    python run.py generate-fixture triangle --seed 1 --out triangle.json
    python run.py run config.yaml --verbose
    python run.py --help
"""

import sys
from pathlib import Path

# Add the src directory to Python path so we can import flesta modules
PROJECT_ROOT = Path(__file__).parent
SRC_PATH = PROJECT_ROOT / "src"

if str(SRC_PATH) not in sys.path:
    sys.path.insert(0, str(SRC_PATH))

# Import and run the CLI
try:
    from flesta.cli import cli_main

    if __name__ == "__main__":
        cli_main()

except ImportError as e:
    print(f"Error: Failed to import FLESTA modules: {e}")
    print(f"Make sure you're running this from the project root directory: {PROJECT_ROOT}")
    print("If the error persists, try installing the package in development mode:")
    print("  pip install -e .")
    sys.exit(1)
