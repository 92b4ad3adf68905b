"""
Sampled verification of the model twist identities.

Derivatives are central finite differences along curves in T*Sⁿ: the
displaced points p ± hξ are pulled back onto the manifold, which moves them
by O(h²) symmetrically and keeps the difference quotient second order.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.stats import ortho_group

from ..config import ToleranceProfile, get_tolerance_profile
from .models import CotangentPoint, DehnReport, FibrationPoint, ResidualCheck, TwistProfile
from .twist import model_dehn_twist, phi_coordinates, phi_map, sigma_t, twist_hamiltonian

logger = logging.getLogger(__name__)

MU_RANGE = (0.25, 1.2)
WOBBLE_GRID = 20001

PointMap = Callable[[CotangentPoint], CotangentPoint]


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    return ortho_group.rvs(dim, random_state=rng)


def random_cotangent_points(n: int, count: int, rng: np.random.Generator,
                            mu_low: float, mu_high: float) -> List[CotangentPoint]:
    """Points with uniformly random base, fiber direction and μ ∈ [mu_low, mu_high]."""
    points = []
    for _ in range(count):
        v = rng.normal(size=n + 1)
        v /= np.linalg.norm(v)
        w = rng.normal(size=n + 1)
        w -= (w @ v) * v
        w /= np.linalg.norm(w)
        points.append(CotangentPoint.project(rng.uniform(mu_low, mu_high) * w, v))
    return points


def random_singular_points(n: int, count: int, rng: np.random.Generator) -> List[FibrationPoint]:
    """Points x = a + ib with ⟨a, b⟩ = 0 and ‖a‖ = ‖b‖, so q(x) = 0."""
    points = []
    for _ in range(count):
        a = rng.normal(size=n + 1)
        b = rng.normal(size=n + 1)
        b -= (b @ a) / (a @ a) * a
        b *= np.linalg.norm(a) / np.linalg.norm(b)
        scale = rng.uniform(0.5, 2.0) / np.linalg.norm(a)
        points.append(FibrationPoint.at(scale * (a + 1j * b)))
    return points


def tangent_basis(p: CotangentPoint) -> np.ndarray:
    """2n tangent vectors (a, b) at p, as rows of length 2(n+1): ⟨b, v⟩ = 0, ⟨a, v⟩ + ⟨u, b⟩ = 0."""
    frame = null_space(p.v[None, :])
    rows = []
    for e in frame.T:
        rows.append(np.concatenate([e, np.zeros_like(e)]))
    for e in frame.T:
        rows.append(np.concatenate([-(p.u @ e) * p.v, e]))
    return np.array(rows)


def _displaced(p: CotangentPoint, xi: np.ndarray, h: float) -> CotangentPoint:
    m = p.n + 1
    return CotangentPoint.project(p.u + h * xi[:m], p.v + h * xi[m:], tangency=0.0, warn_above=math.inf)


def pushforward(f: PointMap, p: CotangentPoint, xi: np.ndarray, h: float) -> np.ndarray:
    """Df(p)ξ by central differences."""
    plus = f(_displaced(p, xi, h)).as_vector()
    minus = f(_displaced(p, xi, -h)).as_vector()
    return (plus - minus) / (2 * h)


def omega_matrix(vectors: np.ndarray) -> np.ndarray:
    """ω(X_i, X_j) = ⟨X_i^u, X_j^v⟩ - ⟨X_j^u, X_i^v⟩ for rows X_i = (u-part, v-part)."""
    m = vectors.shape[1] // 2
    pairing = vectors[:, :m] @ vectors[:, m:].T
    return pairing - pairing.T


def symplectic_residual(profile: TwistProfile, points: Sequence[CotangentPoint],
                        tolerances: Optional[ToleranceProfile] = None) -> float:
    """max |ω(Dτξ_i, Dτξ_j) - ω(ξ_i, ξ_j)| over tangent bases at the sample points."""
    tolerances = tolerances or get_tolerance_profile()
    twist = lambda q: model_dehn_twist(q, profile, tolerances)  # noqa: E731
    worst = 0.0
    for p in points:
        basis = tangent_basis(p)
        pushed = np.array([pushforward(twist, p, xi, tolerances.fd_step) for xi in basis])
        worst = max(worst, float(np.max(np.abs(omega_matrix(pushed) - omega_matrix(basis)))))
    return worst


def exactness_check(profile: TwistProfile, points: Sequence[CotangentPoint], rng: np.random.Generator,
                    printed: bool = False, tolerances: Optional[ToleranceProfile] = None) -> float:
    """max |(τ*θ_T - θ_T - dK_λ)(ξ)| over one random unit tangent vector ξ per point.

    θ_T(ξ) is evaluated with the same difference quotient as τ*θ_T, so the
    residual vanishes identically where τ is the identity.
    """
    tolerances = tolerances or get_tolerance_profile()
    h = tolerances.fd_step
    m = points[0].n + 1 if points else 0
    worst = 0.0
    for p in points:
        basis = tangent_basis(p)
        xi = rng.normal(size=basis.shape[0]) @ basis
        xi /= np.linalg.norm(xi)
        plus, minus = _displaced(p, xi, h), _displaced(p, xi, -h)
        tau_p = model_dehn_twist(p, profile, tolerances)
        tau_plus = model_dehn_twist(plus, profile, tolerances)
        tau_minus = model_dehn_twist(minus, profile, tolerances)
        pulled = float(tau_p.u @ (tau_plus.v - tau_minus.v)) / (2 * h)
        original = float(p.u @ (plus.v - minus.v)) / (2 * h)
        dk = (twist_hamiltonian(plus, profile, printed) - twist_hamiltonian(minus, profile, printed)) / (2 * h)
        worst = max(worst, abs(pulled - original - dk))
    logger.debug(f"Exactness residual ({'printed' if printed else 'corrected'} K, n={m - 1}): {worst:.3e}")
    return worst


def twist_equivariance_residual(profile: TwistProfile, points: Sequence[CotangentPoint], rng: np.random.Generator,
                                tolerances: Optional[ToleranceProfile] = None) -> float:
    """max ‖τ(A·y) - A·τ(y)‖ for random orthogonal A."""
    worst = 0.0
    for p in points:
        a = random_orthogonal(p.n + 1, rng)
        lhs = model_dehn_twist(p.act(a), profile, tolerances)
        rhs = model_dehn_twist(p, profile, tolerances).act(a)
        worst = max(worst, lhs.distance(rhs))
    return worst


def phi_equivariance_residual(points: Sequence[FibrationPoint], rng: np.random.Generator,
                              tolerances: Optional[ToleranceProfile] = None) -> float:
    """max ‖Φ(Ax) - A·Φ(x)‖ for random orthogonal A."""
    worst = 0.0
    for point in points:
        a = random_orthogonal(point.x.shape[0], rng)
        lhs = phi_map(FibrationPoint.at(a @ point.x), tolerances)
        rhs = phi_map(point, tolerances).act(a)
        worst = max(worst, lhs.distance(rhs))
    return worst


def singular_tangent(x: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """A random unit vector ξ with Σ x_k ξ_k = 0, tangent to q⁻¹(0) at x."""
    w = rng.normal(size=x.shape[0]) + 1j * rng.normal(size=x.shape[0])
    xi = w - (np.sum(x * w) / np.vdot(x, x).real) * np.conj(x)
    return xi / np.linalg.norm(xi)


def pullback_residual(points: Sequence[FibrationPoint], rng: np.random.Generator,
                      tolerances: Optional[ToleranceProfile] = None) -> float:
    """max |Φ*θ_T(ξ) - θ(ξ)| on q⁻¹(0), with θ = ½Σ(b da - a db) for x = a + ib."""
    tolerances = tolerances or get_tolerance_profile()
    h = tolerances.fd_step
    worst = 0.0
    for point in points:
        x = point.x
        xi = singular_tangent(x, rng)
        u0, _ = phi_coordinates(x)
        _, v_plus = phi_coordinates(x + h * xi)
        _, v_minus = phi_coordinates(x - h * xi)
        pulled = float(u0 @ (v_plus - v_minus)) / (2 * h)
        theta = 0.5 * float(x.imag @ xi.real - x.real @ xi.imag)
        worst = max(worst, abs(pulled - theta))
    return worst


def functional_equation_residual(profile: TwistProfile, count: int = 100) -> float:
    """max |R_λ(-t) - R_λ(t) + t| over |t| ≤ λ/2."""
    t = np.linspace(-profile.lam / 2, profile.lam / 2, count)
    return float(np.max(np.abs(profile.r(-t) - profile.r(t) + t)))


def endpoint_residual(profile: TwistProfile) -> float:
    """Deviation of the rotation angles from π at μ = 0 and from 0 at μ = λ."""
    return max(abs(profile.angle(0.0) - math.pi), abs(profile.angle(profile.lam)))


def sigma_residuals(points: Sequence[CotangentPoint], rng: np.random.Generator,
                    tolerances: Optional[ToleranceProfile] = None) -> Tuple[float, float]:
    """(σ_π against the antipode, σ_s∘σ_t against σ_{s+t}) over the sample points."""
    antipodal = 0.0
    flow = 0.0
    for p in points:
        antipodal = max(antipodal, sigma_t(p, math.pi, tolerances).distance(p.antipode()))
        s, t = rng.uniform(-math.pi, math.pi, size=2)
        composed = sigma_t(sigma_t(p, t, tolerances), s, tolerances)
        flow = max(flow, composed.distance(sigma_t(p, s + t, tolerances)))
    return antipodal, flow


def outside_residual(profile: TwistProfile, points: Sequence[CotangentPoint],
                     tolerances: Optional[ToleranceProfile] = None) -> float:
    """max ‖τ(y) - y‖ over points with μ(y) ≥ λ; exactly zero when τ is the identity there."""
    return max((model_dehn_twist(p, profile, tolerances).distance(p) for p in points), default=0.0)


def wobble_check(profile: TwistProfile, grid: int = WOBBLE_GRID) -> bool:
    """R′ ≥ 0 on t ≥ 0, and R″ < 0 wherever R′ ≥ δ; the second condition is vacuous for δ = ∞."""
    t = np.linspace(0.0, 1.5, grid)
    first = profile.profile_class.d1(t, **profile.params)
    if np.any(first < 0):
        return False
    if profile.unbounded_delta:
        return True
    second = profile.profile_class.d2(t, **profile.params)
    return bool(np.all(second[first >= profile.delta] < 0))


def run_dehn_checks(n: int, profile: TwistProfile, samples: int = 200, seed: int = 0,
                    tolerances: Optional[ToleranceProfile] = None) -> DehnReport:
    """Evaluate every identity of the model twist on seeded random samples."""
    tolerances = tolerances or get_tolerance_profile()
    rng = np.random.default_rng(seed)
    lam = profile.lam
    interior = random_cotangent_points(n, samples, rng, MU_RANGE[0] * lam, MU_RANGE[1] * lam)
    outside = random_cotangent_points(n, samples, rng, lam, 2 * lam)
    singular = random_singular_points(n, samples, rng)

    antipodal, flow = sigma_residuals(interior, rng, tolerances)
    checks = [
        ResidualCheck(name="functional_equation", residual=functional_equation_residual(profile),
                      tolerance=tolerances.functional_equation),
        ResidualCheck(name="endpoint_angles", residual=endpoint_residual(profile), tolerance=tolerances.endpoint),
        ResidualCheck(name="sigma_pi_antipode", residual=antipodal, tolerance=tolerances.endpoint),
        ResidualCheck(name="sigma_flow", residual=flow, tolerance=tolerances.flow),
        ResidualCheck(name="identity_outside", residual=outside_residual(profile, outside, tolerances), tolerance=0.0),
        ResidualCheck(name="symplectic", residual=symplectic_residual(profile, interior, tolerances),
                      tolerance=tolerances.symplectic),
        ResidualCheck(name="exactness", residual=exactness_check(profile, interior, rng, False, tolerances),
                      tolerance=tolerances.exactness),
        ResidualCheck(name="exactness_printed_k", residual=exactness_check(profile, interior, rng, True, tolerances),
                      tolerance=tolerances.exactness, informational=True),
        ResidualCheck(name="twist_equivariance", residual=twist_equivariance_residual(profile, interior, rng, tolerances),
                      tolerance=tolerances.equivariance),
        ResidualCheck(name="phi_equivariance", residual=phi_equivariance_residual(singular, rng, tolerances),
                      tolerance=tolerances.equivariance),
        ResidualCheck(name="phi_pullback", residual=pullback_residual(singular, rng, tolerances),
                      tolerance=tolerances.pullback),
    ]
    report = DehnReport(n=n, lam=lam, delta=profile.delta, profile=profile.name, samples=samples, seed=seed,
                        wobbly=wobble_check(profile), checks=checks)
    for failure in report.failures:
        logger.warning(f"Dehn check '{failure.name}' failed: residual {failure.residual:.3e} > {failure.tolerance:.1e}")
    return report
