"""Maslov-type indices, canonical gradings and dimension formulas."""

from .dimensions import cz_from_morse, disc_moduli_dimension, sft_dimension
from .grading import canonical_grading
from .maslov import det2, det2_samples, loop_maslov, maslov_morse
from .models import (
    DiscDimension,
    GradingData,
    GradingLift,
    IndexFormulaInput,
    IndexResult,
    LagrangianPath,
    SftDimension,
    omega,
)
from .paths import (
    concatenate,
    constant_path,
    frame_from_json,
    path_from_json,
    rotation_frame,
    rotation_loop,
    rotation_path,
)
from .queries import run_index_query
from .robbin_salamon import principal_angles, rs_index

__all__ = [
    "DiscDimension",
    "GradingData",
    "GradingLift",
    "IndexFormulaInput",
    "IndexResult",
    "LagrangianPath",
    "SftDimension",
    "canonical_grading",
    "concatenate",
    "constant_path",
    "cz_from_morse",
    "det2",
    "det2_samples",
    "disc_moduli_dimension",
    "frame_from_json",
    "loop_maslov",
    "maslov_morse",
    "omega",
    "path_from_json",
    "principal_angles",
    "rotation_frame",
    "rotation_loop",
    "rotation_path",
    "rs_index",
    "run_index_query",
    "sft_dimension",
]
