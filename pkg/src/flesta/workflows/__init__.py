"""FLESTA Workflows Module - Orchestration Layer."""

from .run import RunWorkflow, run_config

__all__ = ["RunWorkflow", "run_config"]
