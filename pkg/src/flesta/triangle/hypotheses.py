"""
Hypotheses of the exact triangle lemma and the vanishing lemma for the cone.
"""

import logging
from fractions import Fraction
from typing import List

from ..complexes.homology import block, is_acyclic
from ..complexes.models import FilteredComplex, FilteredMap, compose
from ..complexes.operations import (
    Interval,
    check_complex,
    gap_check,
    gap_witness,
    has_order_at_least,
    map_order,
    split_by_threshold,
)
from ..exceptions import HypothesisFailed, ZeroMap
from ..novikov import format_fraction
from ..spectral.vanishing import thin_part, vanishing_criterion
from .cone import chain_map_defect, homotopy_defect
from .models import HypothesisItem, HypothesisReport, TriangleData

logger = logging.getLogger(__name__)

MODULE_LEVEL_NOTE = (
    "condition 3 checks exactness of 0 → C' → C → C'' → 0 as modules; "
    "β and γ need not be chain maps"
)


def _gap_item(name: str, c: FilteredComplex, interval: Interval) -> HypothesisItem:
    passed = gap_check(c, interval)
    witness = ""
    if not passed:
        src, dst, order = gap_witness(c, interval)
        witness = f"{name} realizes order {format_fraction(order)} ∈ {interval} at ({src}, {dst})"
    return HypothesisItem(condition=1, name=f"{name} has gap {interval}", passed=passed, witness=witness)


def _support_item(t: TriangleData) -> HypothesisItem:
    bound = 4 * t.epsilon
    for r in t.c_prime.support_levels():
        for s in t.c_double_prime.support_levels():
            if abs(r - s) < bound:
                return HypothesisItem(
                    condition=2, name="supports of C' and C'' are 4ε apart", passed=False,
                    witness=f"levels {format_fraction(r)} and {format_fraction(s)} are {format_fraction(abs(r - s))} apart",
                )
    return HypothesisItem(condition=2, name="supports of C' and C'' are 4ε apart", passed=True)


def _order_text(f: FilteredMap) -> str:
    try:
        return str(map_order(f))
    except ZeroMap:
        return "[+∞;∞)"


def _split_item(name: str, f: FilteredMap, epsilon: Fraction) -> HypothesisItem:
    low, high = split_by_threshold(f, epsilon)
    problems = []
    if not has_order_at_least(low, 0):
        problems.append(f"low part of {name} has order {_order_text(low)}")
    if not has_order_at_least(high, 2 * epsilon):
        problems.append(f"{name} minus its low part has order {_order_text(high)} < 2ε")
    return HypothesisItem(
        condition=3, name=f"{name} splits at ε", passed=not problems, witness="; ".join(problems)
    )


def short_exact_failures(t: TriangleData) -> List[str]:
    """Where 0 → C' → C → C'' → 0 (via the low parts β, γ) fails to be exact per degree."""
    beta, _ = split_by_threshold(t.b, t.epsilon)
    gamma, _ = split_by_threshold(t.c, t.epsilon)
    problems = []
    if not compose(gamma, beta).is_zero:
        problems.append("γ∘β ≠ 0")
    for k in t.degree_range():
        dims = (len(t.c_prime.in_degree(k)), len(t.middle.in_degree(k)), len(t.c_double_prime.in_degree(k)))
        if dims[0] + dims[2] != dims[1]:
            problems.append(f"degree {k}: dimensions {dims} do not add up")
        if dims[0] and block(beta, k).rank() != dims[0]:
            problems.append(f"degree {k}: β is not injective")
        if dims[2] and block(gamma, k).rank() != dims[2]:
            problems.append(f"degree {k}: γ is not surjective")
    return problems


def check_seidel_hypotheses(t: TriangleData) -> HypothesisReport:
    """Evaluate the four conditions of the exact triangle lemma, plus the triangle identities."""
    eps = t.epsilon
    items: List[HypothesisItem] = []

    identities = []
    for name, defect in (("b", chain_map_defect(t.b)), ("c", chain_map_defect(t.c)), ("h", homotopy_defect(t))):
        if not defect.is_zero:
            src, dst, scalar = next(iter(defect.nonzero_entries()))
            identities.append(f"{name}: defect {scalar} at ({src}, {dst})")
    items.append(HypothesisItem(condition=0, name="b, c are chain maps and h is a homotopy",
                                passed=not identities, witness="; ".join(identities)))

    items.append(_gap_item("C'", t.c_prime, Interval.open(Fraction(0), 3 * eps)))
    items.append(_gap_item("C''", t.c_double_prime, Interval.open(Fraction(0), 3 * eps)))
    items.append(_gap_item("C", t.middle, Interval.open(Fraction(0), 2 * eps)))
    items.append(_support_item(t))
    items.append(_split_item("b", t.b, eps))
    items.append(_split_item("c", t.c, eps))
    exactness = short_exact_failures(t)
    items.append(HypothesisItem(condition=3, name="0 → C' → C → C'' → 0 is exact", passed=not exactness,
                                witness="; ".join(exactness)))
    items.append(HypothesisItem(
        condition=4, name="h has order [0;∞)", passed=has_order_at_least(t.h, 0),
        witness="" if has_order_at_least(t.h, 0) else f"h has order {_order_text(t.h)}",
    ))

    report = HypothesisReport(passed=all(i.passed for i in items), items=items, note=MODULE_LEVEL_NOTE)
    for item in report.failures:
        logger.debug(f"Condition {item.condition} failed: {item.name} ({item.witness})")
    return report


def vanishing_lemma(d: FilteredComplex, epsilon: Fraction) -> bool:
    """Certify H(D, d_D) = 0 from H(D, δ) = 0, where δ keeps the terms of order < ε.

    Raises:
        HypothesisFailed: Listing every premise that does not hold.
        CertificationError: If elimination disagrees with the certificate.
    """
    failures = []
    gap = Interval.half_open(epsilon, 2 * epsilon)
    if not gap_check(d, gap):
        src, dst, order = gap_witness(d, gap)
        failures.append(f"D realizes order {format_fraction(order)} ∈ {gap} at ({src}, {dst})")
    thin = thin_part(d, epsilon)
    thin_report = check_complex(thin)
    if not thin_report.passed:
        failures.append(f"δ does not square to zero: {thin_report.first_violation.detail}")
    elif not is_acyclic(thin):
        failures.append("H(D, δ) ≠ 0")
    if failures:
        raise HypothesisFailed(f"vanishing lemma premises fail: {'; '.join(failures)}", failures)
    return vanishing_criterion(d, threshold=epsilon)
