"""Path generators, concatenation and the JSON path formats."""

import logging
from typing import Any, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..exceptions import CornerMismatch, InputError, NotLagrangian
from ..serialization import input_error_from_validation
from .models import LagrangianPath, check_frame, projector

logger = logging.getLogger(__name__)


def rotation_frame(angles: Sequence[float]) -> np.ndarray:
    """The frame of e^{iθ_1}ℝ ⊕ … ⊕ e^{iθ_n}ℝ ⊂ ℂⁿ."""
    angles = np.asarray(angles, dtype=float)
    return np.vstack([np.diag(np.cos(angles)), np.diag(np.sin(angles))])


def rotation_path(start: Sequence[float], end: Sequence[float], samples: int = 200) -> LagrangianPath:
    """t ↦ diag(e^{iθ_j(t)})ℝⁿ with θ_j interpolated linearly between ``start`` and ``end`` (radians)."""
    start_arr = np.asarray(start, dtype=float)
    end_arr = np.asarray(end, dtype=float)
    if start_arr.shape != end_arr.shape:
        raise ValueError("start and end angles must have the same length")
    times = np.linspace(0.0, 1.0, max(samples, 2))
    frames = np.array([rotation_frame(start_arr + t * (end_arr - start_arr)) for t in times])
    return LagrangianPath(frames=frames, times=times)


def rotation_loop(windings: Sequence[int], samples: int = 200) -> LagrangianPath:
    """Closed loop θ_j(t) = π·k_j·t; its Maslov index is Σ k_j."""
    return rotation_path([0.0] * len(windings), [np.pi * k for k in windings], samples)


def constant_path(frame: np.ndarray, samples: int = 2) -> LagrangianPath:
    return LagrangianPath(frames=np.array([frame] * max(samples, 1)), times=np.linspace(0.0, 1.0, max(samples, 1)))


def same_subspace(first: np.ndarray, second: np.ndarray, tolerance: float) -> bool:
    return float(np.max(np.abs(projector(first) - projector(second)))) <= tolerance


def concatenate(paths: Sequence[LagrangianPath], tolerance: float = 1e-9) -> LagrangianPath:
    """Join paths end to start, dropping the repeated junction samples.

    Raises:
        CornerMismatch: If a path does not start where the previous one ends.
    """
    frames: List[np.ndarray] = []
    for i, path in enumerate(paths):
        if frames:
            if not same_subspace(frames[-1], path.start, tolerance):
                raise CornerMismatch(f"edge {i} does not start where edge {i - 1} ends")
            frames.extend(path.frames[1:])
        else:
            frames.extend(path.frames)
    return LagrangianPath.from_frames(frames)


class RotationSpec(BaseModel):
    """{"generator": "rotation", "start": [...], "end": [...], "samples": m}; angles in units of π."""

    model_config = ConfigDict(extra="forbid")

    generator: str = "rotation"
    start: List[float]
    end: Optional[List[float]] = None
    samples: int = Field(200, ge=2)


class FramesSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    frames: List[List[List[float]]]
    times: Optional[List[float]] = None


def path_from_json(data: Any, pointer: str = "", tolerance: float = 1e-10) -> LagrangianPath:
    """Read either explicit frames or a rotation generator."""
    try:
        if isinstance(data, dict) and "generator" in data:
            spec = RotationSpec.model_validate(data)
            if spec.generator != "rotation":
                raise InputError(f"unknown path generator '{spec.generator}'", f"{pointer}/generator")
            end = spec.end if spec.end is not None else spec.start
            return rotation_path(np.pi * np.asarray(spec.start), np.pi * np.asarray(end), spec.samples)
        spec = FramesSpec.model_validate(data)
    except ValidationError as e:
        raise input_error_from_validation(e, pointer) from e
    try:
        return LagrangianPath.from_frames(spec.frames, spec.times, tolerance)
    except (ValidationError, NotLagrangian, ValueError) as e:
        raise InputError(f"invalid Lagrangian path: {e}", f"{pointer}/frames") from e


def frame_from_json(data: Any, pointer: str = "", tolerance: float = 1e-10) -> np.ndarray:
    """A single frame, either as a matrix or as {"generator": "rotation", "start": [...]}."""
    if isinstance(data, dict):
        return path_from_json(data, pointer, tolerance).start
    try:
        return check_frame(np.asarray(data, dtype=float), tolerance)
    except (NotLagrangian, ValueError) as e:
        raise InputError(f"invalid Lagrangian frame: {e}", pointer) from e
