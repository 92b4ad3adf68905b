"""
Data models for Maslov-type index computations.

ℝ^{2n} carries coordinates (x, y) and the standard form ω₀ with matrix
J₀ = [[0, I], [-I, 0]]. A Lagrangian subspace is given by an n-frame V
(2n × n) with Vᵀ J₀ V = 0.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import NotLagrangian
from ..novikov import format_fraction

logger = logging.getLogger(__name__)


def omega(n: int) -> np.ndarray:
    """J₀ on ℝ^{2n}."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def lagrangian_residual(frame: np.ndarray) -> float:
    n = frame.shape[1]
    return float(np.max(np.abs(frame.T @ omega(n) @ frame))) if n else 0.0


def orthonormal(frame: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(frame)
    return q


def unitary(frame: np.ndarray) -> np.ndarray:
    """The unitary n × n matrix X + iY of an orthonormalized Lagrangian frame."""
    q = orthonormal(frame)
    n = q.shape[1]
    return q[:n] + 1j * q[n:]


def projector(frame: np.ndarray) -> np.ndarray:
    q = orthonormal(frame)
    return q @ q.T


def check_frame(frame: np.ndarray, tolerance: float) -> np.ndarray:
    """Validate shape and the Lagrangian condition.

    Raises:
        NotLagrangian: If the frame is not a 2n × n matrix of rank n with Vᵀ J₀ V = 0.
    """
    frame = np.asarray(frame, dtype=float)
    if frame.ndim != 2 or frame.shape[0] != 2 * frame.shape[1]:
        raise NotLagrangian(f"frame has shape {frame.shape}, expected (2n, n)")
    scale = max(1.0, float(np.max(np.abs(frame)))) ** 2
    residual = lagrangian_residual(frame)
    if residual > tolerance * scale:
        raise NotLagrangian(f"frameᵀ·J₀·frame has entries of size {residual:.3e}")
    if np.linalg.matrix_rank(frame) < frame.shape[1]:
        raise NotLagrangian("frame columns are linearly dependent")
    return frame


class LagrangianPath(BaseModel):
    """Samples of a path of Lagrangian subspaces at parameter values ``times``."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    frames: np.ndarray
    times: np.ndarray
    tolerance: float = Field(1e-10, gt=0)

    @field_validator("frames", "times", mode="before")
    @classmethod
    def as_array(cls, v: Any) -> np.ndarray:
        return np.asarray(v, dtype=float)

    @model_validator(mode="after")
    def check_samples(self) -> "LagrangianPath":
        if self.frames.ndim != 3 or len(self.frames) == 0:
            raise ValueError("frames must be a non-empty list of (2n, n) matrices")
        if len(self.times) != len(self.frames):
            raise ValueError("times and frames must have the same length")
        if np.any(np.diff(self.times) < 0):
            raise ValueError("times must be non-decreasing")
        for frame in self.frames:
            check_frame(frame, self.tolerance)
        return self

    @property
    def n(self) -> int:
        return self.frames.shape[2]

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def start(self) -> np.ndarray:
        return self.frames[0]

    @property
    def end(self) -> np.ndarray:
        return self.frames[-1]

    def reversed(self) -> "LagrangianPath":
        return LagrangianPath(frames=self.frames[::-1], times=(self.times[-1] + self.times[0]) - self.times[::-1],
                              tolerance=self.tolerance)

    def transformed(self, symplectic: np.ndarray) -> "LagrangianPath":
        """Image under a fixed linear symplectic map."""
        frames = np.einsum("ij,kjl->kil", symplectic, self.frames)
        return LagrangianPath(frames=frames, times=self.times, tolerance=self.tolerance)

    @classmethod
    def from_frames(cls, frames: List[Any], times: Optional[List[float]] = None,
                    tolerance: float = 1e-10) -> "LagrangianPath":
        frames_arr = np.asarray(frames, dtype=float)
        if times is None:
            times = np.linspace(0.0, 1.0, len(frames_arr)) if len(frames_arr) > 1 else np.zeros(1)
        return cls(frames=frames_arr, times=np.asarray(times, dtype=float), tolerance=tolerance)


class GradingData(BaseModel):
    """Samples of det²_Θ along a path, as unit complex numbers."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    values: np.ndarray

    @field_validator("times", mode="before")
    @classmethod
    def as_real(cls, v: Any) -> np.ndarray:
        return np.asarray(v, dtype=float)

    @field_validator("values", mode="before")
    @classmethod
    def as_complex(cls, v: Any) -> np.ndarray:
        return np.asarray(v, dtype=complex)

    @model_validator(mode="after")
    def check_unit_circle(self) -> "GradingData":
        if len(self.times) != len(self.values) or len(self.values) == 0:
            raise ValueError("times and values must be non-empty and of equal length")
        if np.any(np.abs(np.abs(self.values) - 1.0) > 1e-8):
            raise ValueError("det² samples must lie on the unit circle")
        return self


class GradingLift(BaseModel):
    """A continuous real lift of det² with exp(2πi·lift) = det²."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    values: np.ndarray

    def shift(self, k: int) -> "GradingLift":
        """The grading of L̃[k]: the lift minus k."""
        return GradingLift(times=self.times, values=self.values - k)

    def at(self, t: float) -> float:
        return float(np.interp(t, self.times, self.values))

    @property
    def winding(self) -> float:
        return float(self.values[-1] - self.values[0])


class IndexFormulaInput(BaseModel):
    """Numbers entering the SFT index formula for a Reeb orbit γ on S*Sⁿ."""

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    n: int = Field(..., ge=1)
    mu_cz: Optional[Fraction] = None
    morse: Optional[int] = None
    c1: int = 0
    dim_r_sim: Optional[int] = None

    @field_validator("mu_cz", mode="before")
    @classmethod
    def parse_mu(cls, v: Any) -> Optional[Fraction]:
        if v is None:
            return None
        return Fraction(str(v))

    @classmethod
    def simple_geodesic(cls, n: int, c1: int = 0) -> "IndexFormulaInput":
        """A simple closed geodesic on Sⁿ: Morse index n - 1 in an n-dimensional family."""
        return cls(n=n, morse=n - 1, c1=c1, dim_r_sim=n)


class SftDimension(BaseModel):
    mode: Literal["CZ", "MorseBott"]
    dimension: Fraction
    verdict: Literal["empty-for-generic-J", "nonnegative"]

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def to_json(self) -> Dict[str, Any]:
        return {"mode": self.mode, "dimension": format_fraction(self.dimension), "verdict": self.verdict}


class DiscDimension(BaseModel):
    n: int
    mu: int
    k: int
    dimension: int
    degree_identity: Optional[bool] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump()


class IndexResult(BaseModel):
    """What the ``index`` command reports."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: Literal["loop", "rs", "mm", "dim"]
    value: Optional[str] = None
    doubled: Optional[int] = None
    details: Dict[str, Any] = Field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"mode": self.mode, "value": self.value, "details": self.details}
        if self.doubled is not None:
            data["doubled"] = self.doubled
        return data
