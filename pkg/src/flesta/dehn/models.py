"""
Data models for the model Dehn twist.

T*Sⁿ is realised as {(u, v) ∈ ℝ^{n+1} × ℝ^{n+1} : ‖v‖ = 1, ⟨u, v⟩ = 0}
with v the base point and u the fiber coordinate. The length function is
μ(u, v) = ‖u‖ and the Liouville form is θ_T = u·dv.
"""

import logging
import math
from typing import Any, Dict, List, Type

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..exceptions import InvalidProfile
from .profiles import ProfileBase, get_profile_registry

logger = logging.getLogger(__name__)

INVARIANT_TOLERANCE = 1e-12


class CotangentPoint(BaseModel):
    """A point (u, v) of T*Sⁿ."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    u: np.ndarray
    v: np.ndarray

    @field_validator("u", "v", mode="before")
    @classmethod
    def as_array(cls, value: Any) -> np.ndarray:
        return np.asarray(value, dtype=float)

    @model_validator(mode="after")
    def check_tangency(self) -> "CotangentPoint":
        if self.u.shape != self.v.shape or self.u.ndim != 1:
            raise ValueError(f"u and v must be vectors of equal length, got {self.u.shape} and {self.v.shape}")
        if abs(np.linalg.norm(self.v) - 1.0) > INVARIANT_TOLERANCE:
            raise ValueError(f"‖v‖ = {np.linalg.norm(self.v):.15f}, expected 1")
        if abs(float(self.u @ self.v)) > INVARIANT_TOLERANCE * max(1.0, float(np.linalg.norm(self.u))):
            raise ValueError(f"⟨u, v⟩ = {float(self.u @ self.v):.3e}, expected 0")
        return self

    @classmethod
    def project(cls, u: Any, v: Any, tangency: float = 1e-12, warn_above: float = 1e-9) -> "CotangentPoint":
        """Build a point, re-projecting v to the sphere and u to v⊥ when they drift."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValueError("base vector v is zero")
        drift = max(abs(norm - 1.0), abs(float(u @ v)) / norm)
        if drift > tangency:
            if drift > warn_above:
                logger.warning(f"Re-projecting onto T*Sⁿ after a drift of {drift:.3e}")
            v = v / norm
            u = u - (u @ v) * v
        return cls(u=u, v=v)

    @property
    def n(self) -> int:
        return self.u.shape[0] - 1

    @property
    def mu(self) -> float:
        return float(np.linalg.norm(self.u))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.u, self.v])

    def antipode(self) -> "CotangentPoint":
        return CotangentPoint(u=-self.u, v=-self.v)

    def act(self, orthogonal: np.ndarray) -> "CotangentPoint":
        """The O(n+1)-action A·(u, v) = (Au, Av)."""
        return CotangentPoint(u=orthogonal @ self.u, v=orthogonal @ self.v)

    def distance(self, other: "CotangentPoint") -> float:
        return float(np.max(np.abs(self.as_vector() - other.as_vector())))


class FibrationPoint(BaseModel):
    """A point x ∈ ℂ^{n+1} together with q(x) = Σ x_k²."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    value: complex

    @field_validator("x", mode="before")
    @classmethod
    def as_array(cls, value: Any) -> np.ndarray:
        return np.asarray(value, dtype=complex)

    @model_validator(mode="after")
    def check_value(self) -> "FibrationPoint":
        recomputed = complex(np.sum(self.x ** 2))
        if abs(recomputed - self.value) > INVARIANT_TOLERANCE * max(1.0, float(np.vdot(self.x, self.x).real)):
            raise ValueError(f"stored q(x) = {self.value} differs from Σx² = {recomputed}")
        return self

    @classmethod
    def at(cls, x: Any) -> "FibrationPoint":
        x = np.asarray(x, dtype=complex)
        return cls(x=x, value=complex(np.sum(x ** 2)))


class TwistProfile(BaseModel):
    """A registered profile R with scale λ and wobble parameter δ; R_λ(t) = λR(t/λ)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "default"
    lam: float = Field(1.0, gt=0, le=1)
    delta: float = Field(0.01, gt=0)
    params: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_profile(self) -> "TwistProfile":
        profile_class = get_profile_registry().get(self.name)
        if profile_class is None:
            available = ", ".join(get_profile_registry().list_available())
            raise ValueError(f"unknown profile '{self.name}', available: {available}")
        profile_class.validate_params(**self.params)
        return self

    @classmethod
    def build(cls, name: str = "default", lam: float = 1.0, delta: float = 0.01, **params: float) -> "TwistProfile":
        """Construct a profile, raising InvalidProfile instead of a validation error."""
        try:
            return cls(name=name, lam=lam, delta=delta, params=params)
        except ValidationError as e:
            messages: List[str] = [str(err.get("msg")) for err in e.errors()]
            raise InvalidProfile("; ".join(messages)) from e

    @property
    def profile_class(self) -> Type[ProfileBase]:
        return get_profile_registry().get(self.name)

    @property
    def unbounded_delta(self) -> bool:
        return math.isinf(self.delta)

    def r(self, t: Any) -> np.ndarray:
        return self.lam * self.profile_class.value(np.asarray(t, dtype=float) / self.lam, **self.params)

    def r_prime(self, t: Any) -> np.ndarray:
        return self.profile_class.d1(np.asarray(t, dtype=float) / self.lam, **self.params)

    def angle(self, mu: float) -> float:
        """Rotation angle 2πR′_λ(μ) of the twist at length μ."""
        return float(2.0 * np.pi * self.r_prime(mu))


class ResidualCheck(BaseModel):
    """One measured residual against its tolerance."""

    model_config = ConfigDict(frozen=True)

    name: str
    residual: float
    tolerance: float
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "residual": float(f"{self.residual:.12g}"),
            "tolerance": float(f"{self.tolerance:.12g}"),
            "passed": self.passed,
            "informational": self.informational,
        }


class DehnReport(BaseModel):
    """Residuals of the model twist identities for one (n, λ, δ, profile) setting."""

    model_config = ConfigDict(frozen=True)

    n: int
    lam: float
    delta: float
    profile: str
    samples: int
    seed: int
    wobbly: bool
    checks: List[ResidualCheck]

    @property
    def passed(self) -> bool:
        return self.wobbly and all(c.passed for c in self.checks if not c.informational)

    @property
    def failures(self) -> List[ResidualCheck]:
        return [c for c in self.checks if not c.informational and not c.passed]

    def check(self, name: str) -> ResidualCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lambda": float(f"{self.lam:.12g}"),
            "delta": "inf" if math.isinf(self.delta) else float(f"{self.delta:.12g}"),
            "profile": self.profile,
            "samples": self.samples,
            "seed": self.seed,
            "wobbly": self.wobbly,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
