"""
Seeded fixture generators backing the acceptance suite.

Importing this package registers every fixture kind.
"""
from .base import FixtureBase, FixtureRegistry, get_fixture_registry

# Import fixture modules to ensure they register themselves
from . import algebras, complexes, triangles
from .algebras import mc_obstructed_toy, mc_solvable_toy, truncated_polynomial_algebra
from .complexes import perturbed_acyclic_complex, random_gapped_complex, two_generator_complex
from .triangles import random_triangle

__all__ = [
    "FixtureBase",
    "FixtureRegistry",
    "get_fixture_registry",
    "mc_obstructed_toy",
    "mc_solvable_toy",
    "perturbed_acyclic_complex",
    "random_gapped_complex",
    "random_triangle",
    "truncated_polynomial_algebra",
    "two_generator_complex",
]
