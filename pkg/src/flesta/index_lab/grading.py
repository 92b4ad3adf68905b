"""Canonical gradings: continuous lifts of det² anchored at the end point."""

import logging
from typing import Optional

import numpy as np

from ..config import ToleranceProfile, get_tolerance_profile
from ..exceptions import IndexLabError, JumpTooLarge
from .models import GradingData, GradingLift

logger = logging.getLogger(__name__)

MAX_JUMP = 0.25


def canonical_grading(data: GradingData, tolerances: Optional[ToleranceProfile] = None) -> GradingLift:
    """The continuous lift with exp(2πi·lift) = det² and lift(1) = 0.

    Raises:
        JumpTooLarge: If det² turns by a quarter turn or more between samples.
        IndexLabError: If det² is not 1 at the final sample.
    """
    tolerances = tolerances or get_tolerance_profile()
    values = data.values
    if abs(values[-1] - 1.0) > max(tolerances.closure, 1e-8):
        raise IndexLabError(f"det² at the end point is {values[-1]:.6f}, the anchor needs 1")
    steps = np.angle(values[1:] / values[:-1]) / (2 * np.pi)
    if len(steps) and np.max(np.abs(steps)) >= MAX_JUMP:
        k = int(np.argmax(np.abs(steps)))
        raise JumpTooLarge(f"lift would jump by {steps[k]:.3f} between samples {k} and {k + 1}")
    cumulative = np.concatenate([[0.0], np.cumsum(steps)])
    lift = cumulative - cumulative[-1]
    logger.debug(f"Canonical grading with total winding {lift[-1] - lift[0]:.6f}")
    return GradingLift(times=data.times, values=lift)
