"""
Maurer-Cartan equation, bounding cochains and deformed operations.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from ..exceptions import AInftyError, DivergenceRisk
from ..linalg import solve_in_span
from ..novikov import NovikovScalar, format_fraction
from .algebra import accumulate, apply_op
from .models import AInftyData, BoundingCochain, Element, Obstructed, OpTable, clean, element_valuation

logger = logging.getLogger(__name__)

MAX_STEPS = 256


def _require_degree_one(a: AInftyData, b: BoundingCochain) -> None:
    problem = b.degree_problem(a)
    if problem:
        raise AInftyError(f"bounding cochain has the wrong degree: {problem}")


def mc_residual(a: AInftyData, b: BoundingCochain) -> Element:
    """Σ_k m_k(b, …, b) below the cap.

    Only k with k·𝔳(b) < cap + max level can contribute below the cap.

    Raises:
        DivergenceRisk: If b is nonzero with filtration valuation ≤ 0.
    """
    _require_degree_one(a, b)
    if b.is_zero:
        return clean(dict(a.op(())), a.cap)
    v = b.valuation(a)
    if v <= 0:
        raise DivergenceRisk(f"b has valuation {format_fraction(v)}; Σ m_k(b, …, b) need not converge")
    bound = a.cap + a.max_level
    total: Element = {}
    for k in range(a.k_max + 1):
        if k * v >= bound:
            break
        for out, s in apply_op(a, [b.terms] * k).items():
            accumulate(total, out, s)
    return clean(total, a.cap)


def leading_part(a: AInftyData, element: Element, position: Fraction) -> Element:
    """Terms of ``element`` sitting exactly at filtration ``position``."""
    gens = a.by_name
    out: Element = {}
    for g, s in element.items():
        terms = [t for t in s.terms if gens[g].level + t[1] == position]
        if terms:
            out[g] = NovikovScalar(terms, a.cap)
    return out


def _linear_system(a: AInftyData, position: Fraction, unknowns: List[str]) -> Dict[Tuple[str, int], List[Fraction]]:
    """Rows (output, doubled e-exponent) of the order-zero part of m_1 on T^{position - level(g)}·g."""
    gens = a.by_name
    rows: Dict[Tuple[str, int], List[Fraction]] = {}
    for j, g in enumerate(unknowns):
        mu2_b = 1 - gens[g].degree
        for out, scalar in a.op((g,)).items():
            for c, lam, mu2 in scalar.terms:
                if gens[out].level + lam != gens[g].level:
                    continue
                row = rows.setdefault((out, mu2 + mu2_b), [Fraction(0)] * len(unknowns))
                row[j] += c
    return rows


def mc_solve(a: AInftyData, cap: Union[Fraction, None] = None) -> Union[BoundingCochain, Obstructed]:
    """Solve Σ m_k(b, …, b) = 0 by induction on the filtration.

    At the lowest filtration level P of the residual, the order-zero part of
    m_1 must hit minus the residual there; the correction is added to b and the
    residual recomputed. The result is an Obstructed value at the first level
    where this is impossible.
    """
    if cap is not None:
        a = a.model_copy(update={"cap": Fraction(cap)})
    gens = a.by_name
    b = BoundingCochain()
    for step in range(MAX_STEPS):
        residual = mc_residual(a, b)
        if not residual:
            logger.debug(f"Maurer-Cartan solved after {step} correction(s)")
            return b
        position = element_valuation(residual, gens)
        leading = leading_part(a, residual, position)
        if position <= 0:
            logger.debug(f"Residual at filtration {format_fraction(position)} cannot be killed by b")
            return Obstructed(level=position, residual_class=leading, partial=b)

        unknowns = [g for g in a.names if 0 < position - gens[g].level < a.cap]
        system = _linear_system(a, position, unknowns)
        target_keys = {(g, mu2) for g, s in leading.items() for _, _, mu2 in s.terms}
        keys = sorted(set(system) | target_keys)
        columns = [[system.get(key, [Fraction(0)] * len(unknowns))[j] for key in keys] for j in range(len(unknowns))]
        target = [-leading[g].coefficient(position - gens[g].level, mu2) if g in leading else Fraction(0)
                  for g, mu2 in keys]
        coeffs = solve_in_span(columns, target, len(keys)) if unknowns else None
        if coeffs is None:
            logger.debug(f"Obstruction at filtration {format_fraction(position)}")
            return Obstructed(level=position, residual_class=leading, partial=b)

        correction = {
            g: NovikovScalar([(c, position - gens[g].level, 1 - gens[g].degree)], a.cap)
            for g, c in zip(unknowns, coeffs) if c != 0
        }
        logger.debug(f"Level {format_fraction(position)}: correcting {sorted(correction)}")
        b = b + BoundingCochain(terms=correction)
    raise AInftyError(f"Maurer-Cartan induction did not finish in {MAX_STEPS} steps")


def deform(a: AInftyData, b: BoundingCochain) -> AInftyData:
    """m_k^b(x_1, …, x_k) = Σ m(b, …, b, x_1, b, …, b, x_k, b, …, b).

    Every operation entry contributes once for each choice of the slots kept
    as inputs; the other slots are filled with b. Since b has shifted degree
    zero there are no signs.
    """
    _require_degree_one(a, b)
    ops: OpTable = {}
    for inputs, outputs in a.operations.items():
        n = len(inputs)
        for k in range(n + 1):
            for slots in itertools.combinations(range(n), k):
                coeff = NovikovScalar.one(a.cap)
                for j in range(n):
                    if j in slots:
                        continue
                    s = b.terms.get(inputs[j])
                    if s is None:
                        coeff = NovikovScalar.zero(a.cap)
                        break
                    coeff = (coeff * s).truncate(a.cap)
                if coeff.is_zero:
                    continue
                key = tuple(inputs[j] for j in slots)
                target = ops.setdefault(key, {})
                for out, scalar in outputs.items():
                    accumulate(target, out, (coeff * scalar).truncate(a.cap))
    deformed = a.with_operations(ops)
    if deformed.op(()):
        logger.warning("b does not solve the Maurer-Cartan equation; the deformed structure is curved")
    return deformed


def flatness_residuals(a: AInftyData) -> Tuple[Element, List[Tuple[str, Element]]]:
    """m_0 and the nonzero values of m_1∘m_1 on generators, below the cap."""
    curvature = clean(dict(a.op(())), a.cap)
    squares: List[Tuple[str, Element]] = []
    for name in a.names:
        image = apply_op(a, [{name: NovikovScalar.one(a.cap)}])
        if not image:
            continue
        twice = apply_op(a, [image])
        if twice:
            squares.append((name, twice))
    return curvature, squares
