"""Filtered complexes over Novikov rings: models, checks, orders and cohomology."""

from .homology import NovikovHomology, is_acyclic, novikov_homology_ranks, residue_homology_ranks
from .models import (
    AnchoredGeneratorSet,
    AnchoredPoint,
    Decoration,
    FilteredComplex,
    FilteredMap,
    Generator,
    compose,
    differential_map,
    identity_map,
)
from .operations import (
    AnchoredNormalization,
    ComplexCheckReport,
    Interval,
    check_complex,
    complex_gap,
    deck_related,
    gap_check,
    leading_part,
    map_order,
    normalize_anchored,
    parity_view,
    split_by_threshold,
)

__all__ = [
    "AnchoredGeneratorSet",
    "AnchoredNormalization",
    "AnchoredPoint",
    "ComplexCheckReport",
    "Decoration",
    "FilteredComplex",
    "FilteredMap",
    "Generator",
    "Interval",
    "NovikovHomology",
    "check_complex",
    "complex_gap",
    "compose",
    "deck_related",
    "differential_map",
    "gap_check",
    "identity_map",
    "is_acyclic",
    "leading_part",
    "map_order",
    "normalize_anchored",
    "novikov_homology_ranks",
    "parity_view",
    "residue_homology_ranks",
    "split_by_threshold",
]
