"""
Evaluation of A∞ operations and the A∞ relation.

The relation on x_1 ⊗ … ⊗ x_k is

    Σ (-1)^{ε_i} m_{k₁}(x_1, …, x_i, m_{k₂}(x_{i+1}, …, x_{i+k₂}), …, x_k) = 0,
    ε_i = |x_1|' + … + |x_i|',

evaluated once by direct summation and once by squaring the coderivation on
bar words and keeping the words of length one. Novikov coefficients have even
degree, so they never contribute Koszul signs.
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..novikov import NovikovScalar
from .models import AInftyData, Element, RelationReport, RelationResidual, clean, shifted

logger = logging.getLogger(__name__)

BarElement = Dict[Tuple[str, ...], NovikovScalar]


def accumulate(target: Dict, key, scalar: NovikovScalar) -> None:
    if scalar.is_zero:
        return
    target[key] = target[key] + scalar if key in target else scalar


def unit(a: AInftyData, name: str) -> Element:
    return {name: NovikovScalar.one(a.cap)}


def apply_op(a: AInftyData, inputs: Sequence[Element]) -> Element:
    """m_k(v_1, …, v_k) for elements v_i, expanded multilinearly below the cap."""
    result: Element = {}
    for key, outputs in a.arity(len(inputs)).items():
        coeff: Optional[NovikovScalar] = NovikovScalar.one(a.cap)
        for name, element in zip(key, inputs):
            s = element.get(name)
            if s is None or s.is_zero:
                coeff = None
                break
            coeff = (coeff * s).truncate(a.cap)
        if coeff is None or coeff.is_zero:
            continue
        for out, scalar in outputs.items():
            accumulate(result, out, (coeff * scalar).truncate(a.cap))
    return clean(result, a.cap)


def koszul_sign(a: AInftyData, prefix: Sequence[str]) -> int:
    gens = a.by_name
    return -1 if sum(shifted(gens[x]) for x in prefix) % 2 else 1


def relation_direct(a: AInftyData, xs: Tuple[str, ...]) -> Element:
    """The A∞ relation on a tuple of generators, by direct summation."""
    k = len(xs)
    total: Element = {}
    for k2 in range(min(k, a.k_max) + 1):
        for i in range(k - k2 + 1):
            inner = apply_op(a, [unit(a, x) for x in xs[i:i + k2]])
            if not inner:
                continue
            sign = koszul_sign(a, xs[:i])
            outer = [unit(a, x) for x in xs[:i]] + [inner] + [unit(a, x) for x in xs[i + k2:]]
            for out, s in apply_op(a, outer).items():
                accumulate(total, out, s * sign)
    return clean(total, a.cap)


def coderivation(a: AInftyData, words: BarElement) -> BarElement:
    """The coderivation d = Σ m̂_k applied to a combination of bar words."""
    out: BarElement = {}
    for word, coeff in words.items():
        n = len(word)
        for k2 in range(min(n, a.k_max) + 1):
            for i in range(n - k2 + 1):
                outputs = a.op(word[i:i + k2])
                if not outputs:
                    continue
                sign = koszul_sign(a, word[:i])
                for y, s in outputs.items():
                    accumulate(out, word[:i] + (y,) + word[i + k2:], (coeff * s).truncate(a.cap) * sign)
    return {w: s.truncate(a.cap) for w, s in out.items() if not s.truncate(a.cap).is_zero}


def relation_bar(a: AInftyData, xs: Tuple[str, ...]) -> Element:
    """The A∞ relation on a tuple of generators, as the length-one part of d∘d."""
    square = coderivation(a, coderivation(a, {tuple(xs): NovikovScalar.one(a.cap)}))
    return clean({w[0]: s for w, s in square.items() if len(w) == 1}, a.cap)


def _same(first: Element, second: Element) -> bool:
    keys = set(first) | set(second)
    return all(
        first.get(k, NovikovScalar.zero()).same_terms(second.get(k, NovikovScalar.zero())) for k in keys
    )


def ainfty_relation_check(a: AInftyData, k_max: Optional[int] = None, cross_check: bool = True) -> RelationReport:
    """Evaluate the A∞ relation on every generator tuple of length ≤ k_max."""
    k_max = a.k_max if k_max is None else k_max
    residuals: List[RelationResidual] = []
    checked = 0
    agree = True
    for k in range(k_max + 1):
        for xs in itertools.product(a.names, repeat=k):
            checked += 1
            direct = relation_direct(a, xs)
            if cross_check and not _same(direct, relation_bar(a, xs)):
                logger.warning(f"direct and bar evaluations of the relation differ on {xs}")
                agree = False
            for out, s in sorted(direct.items()):
                residuals.append(RelationResidual(inputs=xs, output=out, scalar=s))
    if residuals:
        logger.debug(f"A∞ relation fails on {len(residuals)} term(s); first {residuals[0].describe()}")
    return RelationReport(passed=not residuals, residuals=residuals, checked=checked, k_max=k_max, cap=a.cap,
                          paths_agree=agree)
