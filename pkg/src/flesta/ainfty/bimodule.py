"""
Filtered A∞ bimodules and the deformed differential δ_{b₁,b₀}.
"""

import itertools
import logging
from typing import List, Tuple

from ..complexes.models import FilteredComplex, FilteredMap, Matrix, differential_map
from ..complexes.operations import square
from ..exceptions import SquareNonzero
from ..novikov import NovikovScalar
from .algebra import accumulate, koszul_sign
from .models import (
    AInftyData,
    BimoduleData,
    BimoduleReport,
    BimoduleTable,
    BoundingCochain,
    Element,
    RelationReport,
    RelationResidual,
    clean,
    shifted,
)

logger = logging.getLogger(__name__)


def diagonal_bimodule(a: AInftyData) -> BimoduleData:
    """``a`` as a bimodule over itself: n_{k₁,k₀} = m_{k₁+k₀+1}."""
    operations: BimoduleTable = {}
    for inputs, outputs in a.operations.items():
        for j in range(len(inputs)):
            operations[(inputs[:j], inputs[j], inputs[j + 1:])] = dict(outputs)
    return BimoduleData(left=a, right=a, module=a.generators, operations=operations, cap=a.cap, k_max=a.k_max)


def _product(s: NovikovScalar, t: NovikovScalar, sign: int, cap) -> NovikovScalar:
    return (s * t).truncate(cap) * sign


def relation_bimodule(bm: BimoduleData, ys: Tuple[str, ...], x: str, zs: Tuple[str, ...]) -> Element:
    """The bimodule relation on y_1 ⊗ … ⊗ x ⊗ … ⊗ z_{k₀}."""
    total: Element = {}
    cap = bm.cap

    for k2 in range(len(ys) + 1):
        for i in range(len(ys) - k2 + 1):
            sign = koszul_sign(bm.left, ys[:i])
            for y, s in bm.left.op(ys[i:i + k2]).items():
                for out, t in bm.op(ys[:i] + (y,) + ys[i + k2:], x, zs).items():
                    accumulate(total, out, _product(s, t, sign, cap))

    for i in range(len(ys) + 1):
        sign = koszul_sign(bm.left, ys[:i])
        for l in range(len(zs) + 1):
            for w, s in bm.op(ys[i:], x, zs[:l]).items():
                for out, t in bm.op(ys[:i], w, zs[l:]).items():
                    accumulate(total, out, _product(s, t, sign, cap))

    left_gens, right_gens = bm.left.by_name, bm.right.by_name
    base = sum(shifted(left_gens[y]) for y in ys) + shifted(bm.by_name[x])
    for k2 in range(len(zs) + 1):
        for i in range(len(zs) - k2 + 1):
            parity = base + sum(shifted(right_gens[z]) for z in zs[:i])
            sign = -1 if parity % 2 else 1
            for z, s in bm.right.op(zs[i:i + k2]).items():
                for out, t in bm.op(ys, x, zs[:i] + (z,) + zs[i + k2:]).items():
                    accumulate(total, out, _product(s, t, sign, cap))
    return clean(total, cap)


def bimodule_relation_check(bm: BimoduleData) -> RelationReport:
    """Evaluate the bimodule relation on all tuples with k₁ + k₀ + 1 ≤ k_max."""
    residuals: List[RelationResidual] = []
    checked = 0
    module_names = sorted(g.name for g in bm.module)
    for total in range(bm.k_max):
        for k1 in range(total + 1):
            for ys in itertools.product(bm.left.names, repeat=k1):
                for zs in itertools.product(bm.right.names, repeat=total - k1):
                    for x in module_names:
                        checked += 1
                        for out, s in sorted(relation_bimodule(bm, ys, x, zs).items()):
                            residuals.append(RelationResidual(inputs=ys + (f"[{x}]",) + zs, output=out, scalar=s))
    return RelationReport(passed=not residuals, residuals=residuals, checked=checked, k_max=bm.k_max, cap=bm.cap)


def deformed_complex(bm: BimoduleData, b0: BoundingCochain, b1: BoundingCochain) -> FilteredComplex:
    """The module with δ_{b₁,b₀}(x) = Σ n(b₁, …, b₁, x, b₀, …, b₀)."""
    matrix: Matrix = {}
    for (ys, x, zs), outputs in bm.operations.items():
        coeff = NovikovScalar.one(bm.cap)
        for name, cochain in [(y, b1) for y in ys] + [(z, b0) for z in zs]:
            s = cochain.terms.get(name)
            if s is None:
                coeff = NovikovScalar.zero(bm.cap)
                break
            coeff = (coeff * s).truncate(bm.cap)
        if coeff.is_zero:
            continue
        for out, scalar in outputs.items():
            accumulate(matrix, (x, out), (coeff * scalar).truncate(bm.cap))
    return FilteredComplex(generators=bm.module, differential={k: v for k, v in matrix.items() if v}, cap=bm.cap)


def _square_residuals(c: FilteredComplex) -> List[RelationResidual]:
    return [RelationResidual(inputs=(src,), output=dst, scalar=s) for (src, dst), s in sorted(square(c).items())]


def deformed_differential(bm: BimoduleData, b0: BoundingCochain, b1: BoundingCochain) -> FilteredMap:
    """δ_{b₁,b₀} as a degree-one filtered map.

    Raises:
        SquareNonzero: If δ_{b₁,b₀}² ≠ 0 below the cap.
    """
    c = deformed_complex(bm, b0, b1)
    residuals = _square_residuals(c)
    if residuals:
        raise SquareNonzero(f"δ_{{b₁,b₀}}² ≠ 0: {residuals[0].describe()}")
    return differential_map(c)


def bimodule_check(bm: BimoduleData, b0: BoundingCochain, b1: BoundingCochain) -> BimoduleReport:
    relations = bimodule_relation_check(bm)
    residuals = _square_residuals(deformed_complex(bm, b0, b1))
    if residuals:
        logger.debug(f"δ_{{b₁,b₀}}² has {len(residuals)} nonzero entries")
    return BimoduleReport(relations=relations, square_residuals=residuals)
