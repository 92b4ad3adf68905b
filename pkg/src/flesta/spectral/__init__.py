"""Spectral sequences of gapped filtered complexes."""

from .engine import (
    TruncatedModel,
    compute_pages,
    default_scheme,
    detect_gap,
    euler_characteristic,
    injection_check,
    next_ranks,
    periodic_ranks,
    shift_page,
    stabilization,
)
from .models import FiltrationScheme, PageCell, SpectralPage, StabilizationResult
from .vanishing import thin_part, vanishing_criterion

__all__ = [
    "FiltrationScheme",
    "PageCell",
    "SpectralPage",
    "StabilizationResult",
    "TruncatedModel",
    "compute_pages",
    "default_scheme",
    "detect_gap",
    "euler_characteristic",
    "injection_check",
    "next_ranks",
    "periodic_ranks",
    "shift_page",
    "stabilization",
    "thin_part",
    "vanishing_criterion",
]
