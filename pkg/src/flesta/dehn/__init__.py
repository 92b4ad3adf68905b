"""Model Dehn twists on T*Sⁿ and the Morse chart of q(z) = Σ z_k²."""

from .checks import (
    exactness_check,
    functional_equation_residual,
    pullback_residual,
    random_cotangent_points,
    random_singular_points,
    run_dehn_checks,
    symplectic_residual,
    wobble_check,
)
from .models import CotangentPoint, DehnReport, FibrationPoint, ResidualCheck, TwistProfile
from .profiles import CubicProfile, PlateauProfile, ProfileBase, ProfileRegistry, get_profile_registry
from .twist import model_dehn_twist, phi_map, sigma_t, twist_hamiltonian

__all__ = [
    "CotangentPoint",
    "CubicProfile",
    "DehnReport",
    "FibrationPoint",
    "PlateauProfile",
    "ProfileBase",
    "ProfileRegistry",
    "ResidualCheck",
    "TwistProfile",
    "exactness_check",
    "functional_equation_residual",
    "get_profile_registry",
    "model_dehn_twist",
    "phi_map",
    "pullback_residual",
    "random_cotangent_points",
    "random_singular_points",
    "run_dehn_checks",
    "sigma_t",
    "symplectic_residual",
    "twist_hamiltonian",
    "wobble_check",
]
