"""
Loop Maslov index and the Maslov-Morse index of a boundary square.

det² of a Lagrangian subspace is det(U)² for the unitary U = X + iY of an
orthonormal frame, optionally after a fixed unitary change of trivialization.
The Maslov index of a loop is the winding number of det², accumulated from
principal argument differences.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..config import ToleranceProfile, get_tolerance_profile
from ..exceptions import CornerMismatch, NotClosed, SamplingTooCoarse
from .models import GradingData, LagrangianPath, unitary
from .paths import concatenate, same_subspace

logger = logging.getLogger(__name__)

MAX_ARGUMENT_STEP = np.pi / 2


def det2(frame: np.ndarray, trivialization: Optional[np.ndarray] = None) -> complex:
    u = unitary(frame)
    if trivialization is not None:
        u = trivialization @ u
    return complex(np.linalg.det(u) ** 2)


def det2_samples(path: LagrangianPath, trivialization: Optional[np.ndarray] = None) -> GradingData:
    values = np.array([det2(frame, trivialization) for frame in path.frames])
    return GradingData(times=path.times, values=values / np.abs(values))


def argument_steps(values: np.ndarray) -> np.ndarray:
    """Principal arguments of z_{k+1}/z_k.

    Raises:
        SamplingTooCoarse: If a step reaches π/2.
    """
    steps = np.angle(values[1:] / values[:-1])
    if len(steps) and np.max(np.abs(steps)) >= MAX_ARGUMENT_STEP:
        k = int(np.argmax(np.abs(steps)))
        raise SamplingTooCoarse(f"det² turns by {steps[k]:.3f} rad between samples {k} and {k + 1}")
    return steps


def loop_maslov(loop: LagrangianPath, trivialization: Optional[np.ndarray] = None,
                tolerances: Optional[ToleranceProfile] = None) -> int:
    """Winding number of det² along a closed loop.

    Raises:
        NotClosed: If the loop does not end where it starts.
        SamplingTooCoarse: If det² moves by π/2 or more between samples.
    """
    tolerances = tolerances or get_tolerance_profile()
    if not same_subspace(loop.start, loop.end, tolerances.closure):
        raise NotClosed("the last subspace differs from the first")
    steps = argument_steps(det2_samples(loop, trivialization).values)
    winding = float(np.sum(steps)) / (2 * np.pi)
    index = int(round(winding))
    if abs(winding - index) > 1e-6:
        logger.warning(f"winding {winding:.9f} is not close to an integer")
    logger.debug(f"Loop Maslov index {index} from {len(loop)} samples")
    return index


def maslov_morse(edges: Sequence[LagrangianPath], trivialization: Optional[np.ndarray] = None,
                 tolerances: Optional[ToleranceProfile] = None) -> int:
    """Maslov index of the loop obtained by running around the four boundary edges of a square.

    Raises:
        CornerMismatch: If consecutive edges do not meet, including the last and first.
    """
    tolerances = tolerances or get_tolerance_profile()
    if len(edges) != 4:
        raise ValueError(f"expected four boundary edges, got {len(edges)}")
    loop = concatenate(edges, tolerances.closure)
    if not same_subspace(loop.end, loop.start, tolerances.closure):
        raise CornerMismatch("edge 3 does not end where edge 0 starts")
    return loop_maslov(loop, trivialization, tolerances)
