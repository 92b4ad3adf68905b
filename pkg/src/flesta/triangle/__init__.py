"""Exact triangles: cone assembly, hypotheses, the vanishing lemma and long exact sequences."""

from .cone import SIGN_TABLE, assemble_cone, chain_map_defect, homotopy_defect
from .hypotheses import check_seidel_hypotheses, short_exact_failures, vanishing_lemma
from .les import connecting_map, extract_les, induced_map
from .models import HypothesisItem, HypothesisReport, LESMap, LESNode, LongExactSequence, TriangleData

__all__ = [
    "HypothesisItem",
    "HypothesisReport",
    "LESMap",
    "LESNode",
    "LongExactSequence",
    "SIGN_TABLE",
    "TriangleData",
    "assemble_cone",
    "chain_map_defect",
    "check_seidel_hypotheses",
    "connecting_map",
    "extract_les",
    "homotopy_defect",
    "induced_map",
    "short_exact_failures",
    "vanishing_lemma",
]
