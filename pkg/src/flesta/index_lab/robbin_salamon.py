"""
Robbin-Salamon index of a Lagrangian path relative to a fixed Lagrangian.

For unitary frames A(t) of the path and B of the reference, the symmetric
unitary S(t) = W Wᵀ with W = Bᴴ A(t) has eigenvalue 1 with multiplicity
dim(Λ(t) ∩ V). Each eigenvalue e^{iψ} is followed continuously; a passage
of ψ through 2πℤ is a crossing, counted with weight 1/2 at the endpoints.
Values are returned doubled so that they stay integers.
"""

import logging
from typing import List, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..config import ToleranceProfile, get_tolerance_profile
from ..exceptions import DegenerateCrossing, SamplingTooCoarse
from .models import LagrangianPath, orthonormal, unitary

logger = logging.getLogger(__name__)

MAX_PRINCIPAL_ANGLE = np.pi / 8
MAX_EIGEN_STEP = np.pi / 2


def principal_angles(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Principal angles between two subspaces given by frames."""
    s = np.linalg.svd(orthonormal(first).T @ orthonormal(second), compute_uv=False)
    return np.arccos(np.clip(s, -1.0, 1.0))


def check_sampling(path: LagrangianPath) -> None:
    """Raises SamplingTooCoarse when consecutive subspaces are π/8 or more apart."""
    for k in range(len(path) - 1):
        angle = float(np.max(principal_angles(path.frames[k], path.frames[k + 1]), initial=0.0))
        if angle >= MAX_PRINCIPAL_ANGLE:
            raise SamplingTooCoarse(f"samples {k} and {k + 1} are {angle:.3f} rad apart (limit π/8)")


def souriau_angles(frame: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Arguments of the eigenvalues of W Wᵀ, W = Bᴴ A."""
    w = unitary(reference).conj().T @ unitary(frame)
    return np.angle(np.linalg.eigvals(w @ w.T))


def _wrap(x: np.ndarray) -> np.ndarray:
    return (x + np.pi) % (2 * np.pi) - np.pi


def tracked_angles(path: LagrangianPath, reference: np.ndarray) -> np.ndarray:
    """Continuous lifts ψ_j(t_k), shape (samples, n); eigenvalues matched by minimal circular distance."""
    lifted: List[np.ndarray] = [souriau_angles(path.frames[0], reference)]
    for k in range(1, len(path)):
        current = souriau_angles(path.frames[k], reference)
        previous = lifted[-1]
        cost = np.abs(_wrap(current[None, :] - previous[:, None]))
        rows, cols = linear_sum_assignment(cost)
        steps = _wrap(current[cols] - previous[rows])
        if len(steps) and np.max(np.abs(steps)) >= MAX_EIGEN_STEP:
            raise SamplingTooCoarse(f"an eigenvalue of the Souriau map jumps at sample {k}")
        nxt = np.empty_like(previous)
        nxt[rows] = previous[rows] + steps
        lifted.append(nxt)
    return np.array(lifted)


def doubled_weight(psi: float, tolerance: float) -> int:
    """2·h(ψ): h = x on the lattice ℤ, floor(x) + 1/2 off it, for x = ψ/2π."""
    x = psi / (2 * np.pi)
    nearest = round(x)
    if abs(x - nearest) <= tolerance:
        return 2 * int(nearest)
    return 2 * int(np.floor(x)) + 1


def _check_interior(track: np.ndarray, tolerance: float) -> None:
    x = track / (2 * np.pi)
    for k in range(1, len(x) - 1):
        nearest = round(x[k])
        if abs(x[k] - nearest) > tolerance:
            continue
        before, after = x[k - 1] - nearest, x[k + 1] - nearest
        if abs(before) > tolerance and abs(after) > tolerance and np.sign(before) == np.sign(after):
            raise DegenerateCrossing(f"an eigenvalue touches 1 at sample {k} without crossing")


def rs_index(path: LagrangianPath, reference: np.ndarray,
             tolerances: Optional[ToleranceProfile] = None) -> int:
    """Twice the Robbin-Salamon index of ``path`` relative to ``reference``.

    Raises:
        SamplingTooCoarse: If consecutive samples are π/8 or more apart.
        DegenerateCrossing: If an interior crossing has a degenerate crossing form.
    """
    tolerances = tolerances or get_tolerance_profile()
    if reference.shape != path.start.shape:
        raise ValueError(f"reference frame has shape {reference.shape}, path frames {path.start.shape}")
    check_sampling(path)
    tracks = tracked_angles(path, reference)
    total = 0
    for j in range(tracks.shape[1]):
        _check_interior(tracks[:, j], tolerances.closure)
        total += doubled_weight(tracks[-1, j], tolerances.closure) - doubled_weight(tracks[0, j], tolerances.closure)
    logger.debug(f"Robbin-Salamon index {total}/2 over {len(path)} samples")
    return total
