"""
FLESTA CLI Commands Package

Contains all CLI command implementations for the FLESTA system.
"""

from .ainfty import ainfty_check, deform, mc_solve
from .dehn import dehn
from .fixtures import generate_fixture
from .index import index
from .novikov import novikov_eval
from .run import run
from .spectral import spectral
from .triangle import triangle

__all__ = [
    "ainfty_check",
    "dehn",
    "deform",
    "generate_fixture",
    "index",
    "mc_solve",
    "novikov_eval",
    "run",
    "spectral",
    "triangle",
]
