"""
Structural checks and order computations for filtered complexes and maps.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import InconsistentEquivalence, ZeroMap
from ..novikov import NovikovScalar, PiGroupElement, format_fraction
from .models import (
    AnchoredGeneratorSet,
    Decoration,
    FilteredComplex,
    FilteredMap,
    Generator,
    Matrix,
    compose,
    differential_map,
    effective_order,
)

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    """One failed invariant, with the entry that witnesses it."""

    kind: str
    src: Optional[str] = None
    dst: Optional[str] = None
    detail: str = ""


class ComplexCheckReport(BaseModel):
    """Outcome of :func:`check_complex`."""

    passed: bool
    violations: List[Violation] = Field(default_factory=list)

    @property
    def first_violation(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


class Interval(BaseModel):
    """A rational interval; ``high=None`` stands for +∞."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    low: Fraction
    high: Optional[Fraction] = None
    low_closed: bool = True
    high_closed: bool = False

    @classmethod
    def open(cls, low: Fraction, high: Optional[Fraction]) -> "Interval":
        return cls(low=low, high=high, low_closed=False, high_closed=False)

    @classmethod
    def half_open(cls, low: Fraction, high: Optional[Fraction]) -> "Interval":
        return cls(low=low, high=high, low_closed=True, high_closed=False)

    def contains(self, x: Fraction) -> bool:
        above = x >= self.low if self.low_closed else x > self.low
        if self.high is None:
            return above
        below = x <= self.high if self.high_closed else x < self.high
        return above and below

    def __str__(self) -> str:
        left = "[" if self.low_closed else "("
        right = "]" if self.high_closed and self.high is not None else ")"
        high = "∞" if self.high is None else format_fraction(self.high)
        return f"{left}{format_fraction(self.low)};{high}{right}"


def term_orders(source: Dict[str, Generator], target: Dict[str, Generator],
                entries: Iterable[Tuple[str, str, NovikovScalar]]):
    """Yield (src, dst, term, effective order) for every stored term."""
    for src, dst, scalar in entries:
        for term in scalar.terms:
            yield src, dst, term, effective_order(source[src], target[dst], term[1])


def _degree_violations(c: FilteredComplex) -> List[Violation]:
    gens = c.by_name
    out = []
    for src, dst, scalar in c.nonzero_entries():
        for coeff, lam, mu2 in scalar.terms:
            if gens[dst].degree + mu2 != gens[src].degree + 1:
                out.append(Violation(
                    kind="degree", src=src, dst=dst,
                    detail=f"term {format_fraction(coeff)}T^{{{format_fraction(lam)}}} has degree "
                           f"{gens[dst].degree + mu2}, expected {gens[src].degree + 1}",
                ))
                break
    return out


def _filtration_violations(c: FilteredComplex) -> List[Violation]:
    gens = c.by_name
    out = []
    for src, dst, term, order in term_orders(gens, gens, c.nonzero_entries()):
        if order < 0:
            out.append(Violation(
                kind="filtration", src=src, dst=dst,
                detail=f"level({dst}) + {format_fraction(term[1])} = {format_fraction(gens[dst].level + term[1])}"
                       f" < level({src}) = {format_fraction(gens[src].level)}",
            ))
    return out


def square(c: FilteredComplex) -> Matrix:
    """The matrix of δ∘δ below the cap."""
    d = differential_map(c)
    return {k: v.truncate(c.cap) for k, v in compose(d, d).matrix.items() if not v.truncate(c.cap).is_zero}


def check_complex(c: FilteredComplex) -> ComplexCheckReport:
    """Verify the degree rule, filtration preservation and δ² = 0 below the cap."""
    violations = _degree_violations(c) + _filtration_violations(c)
    for (src, dst), scalar in sorted(square(c).items()):
        violations.append(Violation(kind="square", src=src, dst=dst, detail=f"(δ∘δ)({src}) has {scalar} on {dst}"))
    if violations:
        logger.debug(f"check_complex found {len(violations)} violation(s); first: {violations[0].kind}")
    return ComplexCheckReport(passed=not violations, violations=violations)


def split_terms(scalar: NovikovScalar, keep) -> Tuple[NovikovScalar, NovikovScalar]:
    kept = [t for t in scalar.terms if keep(t)]
    rest = [t for t in scalar.terms if not keep(t)]
    return NovikovScalar(kept, scalar.cap), NovikovScalar(rest, scalar.cap)


def leading_part(c: FilteredComplex) -> FilteredComplex:
    """δ₀: the terms of effective order exactly zero."""
    gens = c.by_name
    lead: Matrix = {}
    for src, dst, scalar in c.nonzero_entries():
        shift = gens[src].level - gens[dst].level
        low, _ = split_terms(scalar, lambda t: t[1] == shift)
        lead[(src, dst)] = low
    return c.with_differential(lead)


def residue_matrix(c: FilteredComplex, p: int) -> List[List[Fraction]]:
    """δ̄: C̄^p → C̄^{p+1} over ℚ, rows indexed by degree p+1 generators."""
    gens = c.by_name
    rows = c.in_degree(p + 1)
    cols = c.in_degree(p)
    matrix = [[Fraction(0)] * len(cols) for _ in rows]
    for i, dst in enumerate(rows):
        for j, src in enumerate(cols):
            shift = gens[src.name].level - gens[dst.name].level
            matrix[i][j] = c.entry(src.name, dst.name).coefficient(shift, 0)
    return matrix


def map_order(f: FilteredMap) -> Interval:
    """The order [a;∞) of a nonzero filtered map.

    Raises:
        ZeroMap: If ``f`` has no nonzero entry.
    """
    orders = [o for *_, o in term_orders(f.source.by_name, f.target.by_name, f.nonzero_entries())]
    if not orders:
        raise ZeroMap("the zero map has order [+∞;∞)")
    return Interval.half_open(min(orders), None)


def has_order_at_least(f: FilteredMap, bound: Fraction) -> bool:
    """True when ``f`` is zero or of order [a;∞) with a ≥ bound."""
    try:
        return map_order(f).low >= bound
    except ZeroMap:
        return True


def split_by_threshold(f: FilteredMap, epsilon: Fraction) -> Tuple[FilteredMap, FilteredMap]:
    """Split ``f`` into terms of effective order < ε and the rest; low + high = f."""
    if epsilon <= 0:
        raise ValueError("threshold must be positive")
    src_gens, dst_gens = f.source.by_name, f.target.by_name
    low: Matrix = {}
    high: Matrix = {}
    for src, dst, scalar in f.nonzero_entries():
        shift = src_gens[src].level - dst_gens[dst].level
        lo, hi = split_terms(scalar, lambda t: t[1] - shift < epsilon)
        low[(src, dst)] = lo
        high[(src, dst)] = hi
    return f.with_matrix(low), f.with_matrix(high)


def complex_gap(c: FilteredComplex) -> Set[Fraction]:
    """Effective orders realized by the nonzero differential terms."""
    gens = c.by_name
    return {o for *_, o in term_orders(gens, gens, c.nonzero_entries())}


def gap_check(c: FilteredComplex, interval: Interval) -> bool:
    """True iff no realized order lies in ``interval``."""
    witnesses = sorted(o for o in complex_gap(c) if interval.contains(o))
    if witnesses:
        logger.debug(f"gap {interval} fails; realized order {format_fraction(witnesses[0])}")
    return not witnesses


def gap_witness(c: FilteredComplex, interval: Interval) -> Optional[Tuple[str, str, Fraction]]:
    gens = c.by_name
    for src, dst, _, order in term_orders(gens, gens, c.nonzero_entries()):
        if interval.contains(order):
            return src, dst, order
    return None


def parity_view(c: FilteredComplex) -> Dict[str, int]:
    """Degrees reduced mod 2."""
    return {g.name: g.parity for g in c.generators}


class AnchoredNormalization(BaseModel):
    """The energy-zero basis ⟨p⟩ together with the embedding of decorated points."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    complex: FilteredComplex
    embedding: Dict[str, Tuple[str, NovikovScalar]] = Field(default_factory=dict)

    def image(self, label: str) -> Tuple[str, NovikovScalar]:
        """(p, scalar) with [p, w] ↦ scalar·⟨p⟩."""
        return self.embedding[label]


def _embed(energy: Fraction, mu2: int, cap: Fraction) -> NovikovScalar:
    return NovikovScalar([(1, energy, mu2)], cap)


def normalize_anchored(gens: AnchoredGeneratorSet) -> AnchoredNormalization:
    """Build one energy-zero generator ⟨p⟩ per point and embed every decorated lift.

    ⟨p⟩ has degree μ([p,w]) mod 2. The reference lift maps to
    e^{(μ - deg⟨p⟩)/2} T^{𝒜} ⟨p⟩ and a decoration T^λ e^m [p,w'] to
    T^{λ + 𝒜(w')} e^{m + (μ(w') - deg⟨p⟩)/2} ⟨p⟩.

    Raises:
        InconsistentEquivalence: If two decorations sharing a label disagree.
    """
    generators = []
    embedding: Dict[str, Tuple[str, NovikovScalar]] = {}
    degrees: Dict[str, int] = {}
    for point in sorted(gens.points, key=lambda p: p.name):
        degree = point.index % 2
        degrees[point.name] = degree
        generators.append(Generator(name=point.name, degree=degree, level=0))
        embedding[point.name] = (point.name, _embed(point.action, point.index - degree, gens.cap))

    seen: Dict[str, Decoration] = {}
    for deco in gens.decorations:
        previous = seen.get(deco.label)
        if previous is not None and previous.invariants() != deco.invariants():
            raise InconsistentEquivalence(
                f"decorations labelled '{deco.label}' disagree: {previous.invariants()} vs {deco.invariants()}"
            )
        seen[deco.label] = deco
        _, energy, doubled = deco.invariants()
        embedding[deco.label] = (deco.point, _embed(energy, doubled - degrees[deco.point], gens.cap))

    complex_ = FilteredComplex(generators=tuple(generators), differential={}, cap=gens.cap)
    logger.debug(f"Normalized {len(generators)} anchored point(s) with {len(seen)} decoration(s)")
    return AnchoredNormalization(complex=complex_, embedding=embedding)


def deck_related(gens: AnchoredGeneratorSet, first: Decoration, second: Decoration) -> bool:
    """True when two lifts of the same point differ by an element of the deck group."""
    if first.point != second.point:
        return False
    difference = PiGroupElement(energy=second.action - first.action, maslov=second.index - first.index)
    return gens.pi_group.contains(difference)
