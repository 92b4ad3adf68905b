"""The normalized geodesic flow, the model Dehn twist and the Morse chart map Φ."""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..config import ToleranceProfile, get_tolerance_profile
from ..exceptions import OnSingularity, ZeroSection
from .models import CotangentPoint, FibrationPoint, TwistProfile

logger = logging.getLogger(__name__)


def _angle_is(t: float, target: float, tolerance: float) -> bool:
    wrapped = (t - target + math.pi) % (2 * math.pi) - math.pi
    return abs(wrapped) <= tolerance


def sigma_t(p: CotangentPoint, t: float, tolerances: Optional[ToleranceProfile] = None) -> CotangentPoint:
    """σ_t(u, v) = (cos t·u - sin t·‖u‖v, cos t·v + sin t·u/‖u‖).

    σ_π is the antipodal involution and extends over the zero section.

    Raises:
        ZeroSection: If u = 0 and t is not a multiple of π.
    """
    tolerances = tolerances or get_tolerance_profile()
    if t == 0.0:
        return p
    mu = p.mu
    if mu == 0.0:
        if _angle_is(t, 0.0, tolerances.endpoint):
            return p
        if _angle_is(t, math.pi, tolerances.endpoint):
            return p.antipode()
        raise ZeroSection(f"σ_t with t = {t:.6f} is undefined on the zero section")
    c, s = math.cos(t), math.sin(t)
    u = c * p.u - s * mu * p.v
    v = c * p.v + s * p.u / mu
    return CotangentPoint.project(u, v, tolerances.tangency, tolerances.projection_warn)


def model_dehn_twist(p: CotangentPoint, profile: TwistProfile,
                     tolerances: Optional[ToleranceProfile] = None) -> CotangentPoint:
    """τ_λ(y) = σ_{2πR′_λ(μ(y))}(y) off the zero section and A(y) on it."""
    if p.mu == 0.0:
        return p.antipode()
    return sigma_t(p, profile.angle(p.mu), tolerances)


def twist_hamiltonian(p: CotangentPoint, profile: TwistProfile, printed: bool = False) -> float:
    """K_λ = 2π(μR′_λ(μ) - R_λ(μ)), with τ*θ_T - θ_T = dK_λ.

    ``printed=True`` gives 2π(R′_λ(μ) - R(μ)) instead, the form missing the
    factor μ and the rescaling; it is evaluated only to measure how far it is
    from a primitive.
    """
    mu = p.mu
    if printed:
        unscaled = profile.profile_class.value(mu, **profile.params)
        return float(2 * np.pi * (profile.r_prime(mu) - unscaled))
    return float(2 * np.pi * (mu * profile.r_prime(mu) - profile.r(mu)))


def phi_coordinates(x: np.ndarray, alpha: float = 0.0) -> Tuple[np.ndarray, np.ndarray]:
    """(u, v) of Φ for a fixed phase α, as plain arrays; smooth in x wherever re(x̂) ≠ 0."""
    x_hat = np.exp(-0.5j * alpha) * np.asarray(x, dtype=complex)
    re, im = x_hat.real, x_hat.imag
    norm = float(np.linalg.norm(re))
    if norm == 0.0:
        raise OnSingularity("re(x̂) vanishes")
    return im * norm, re / norm


def phi_map(point: FibrationPoint, tolerances: Optional[ToleranceProfile] = None) -> CotangentPoint:
    """Φ(x) = (im(x̂)‖re(x̂)‖, re(x̂)/‖re(x̂)‖) with x̂ = e^{-iα/2}x, α = arg q(x).

    On the singular fiber, |q(x)| ≤ tangency·‖x‖², the phase is α = 0.

    Raises:
        OnSingularity: If x = 0.
    """
    tolerances = tolerances or get_tolerance_profile()
    x = point.x
    if not np.any(x):
        raise OnSingularity("Φ is undefined at the critical point x = 0")
    scale = float(np.vdot(x, x).real)
    alpha = 0.0 if abs(point.value) <= tolerances.tangency * scale else float(np.angle(point.value))
    u, v = phi_coordinates(x, alpha)
    return CotangentPoint.project(u, v, tolerances.tangency, tolerances.projection_warn)
