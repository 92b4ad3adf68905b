"""Filtered A∞ algebras and bimodules: relations, Maurer-Cartan and deformations."""

from .algebra import ainfty_relation_check, apply_op, coderivation, relation_bar, relation_direct
from .bimodule import (
    bimodule_check,
    bimodule_relation_check,
    deformed_complex,
    deformed_differential,
    diagonal_bimodule,
    relation_bimodule,
)
from .maurer_cartan import deform, flatness_residuals, mc_residual, mc_solve
from .models import (
    AInftyData,
    BimoduleData,
    BimoduleReport,
    BoundingCochain,
    Obstructed,
    RelationReport,
    RelationResidual,
)

__all__ = [
    "AInftyData",
    "BimoduleData",
    "BimoduleReport",
    "BoundingCochain",
    "Obstructed",
    "RelationReport",
    "RelationResidual",
    "ainfty_relation_check",
    "apply_op",
    "bimodule_check",
    "bimodule_relation_check",
    "coderivation",
    "deform",
    "deformed_complex",
    "deformed_differential",
    "diagonal_bimodule",
    "flatness_residuals",
    "mc_residual",
    "mc_solve",
    "relation_bar",
    "relation_bimodule",
    "relation_direct",
]
