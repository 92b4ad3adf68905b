"""
Seeded A∞ toys: associative algebras and Maurer-Cartan problems with a planted answer.
"""

import logging
import random
from fractions import Fraction
from typing import List, Tuple

from ..ainfty.algebra import ainfty_relation_check, apply_op
from ..ainfty.maurer_cartan import mc_solve
from ..ainfty.models import AInftyData, BoundingCochain, Obstructed, OpTable
from ..complexes.models import Generator
from ..novikov import NovikovScalar
from .base import FixtureBase, get_fixture_registry

logger = logging.getLogger(__name__)

CAP = Fraction(4)
NONZERO = [-3, -2, -1, 1, 2, 3]
PLANTED_ENERGIES = [Fraction(1, 2), Fraction(1), Fraction(3, 2)]
PRODUCT_ENERGIES = [Fraction(1, 2), Fraction(1)]
OBSTRUCTION_LEVELS = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def truncated_polynomial_algebra(seed: int) -> AInftyData:
    """ℚ[x]/(x^k) on rescaled basis e_i = x^i/c_i, degree 0, levels i·s; only m_2 is nonzero."""
    rng = random.Random(seed)
    k = rng.randint(2, 4)
    step = rng.choice([Fraction(0), Fraction(1, 2), Fraction(1)])
    scales = [Fraction(1)] + [Fraction(rng.choice(NONZERO)) for _ in range(k - 1)]
    generators = tuple(Generator(name=f"e{i}", degree=0, level=i * step) for i in range(k))
    operations: OpTable = {}
    for i in range(k):
        for j in range(k - i):
            coeff = scales[i] * scales[j] / scales[i + j]
            operations[(f"e{i}", f"e{j}")] = {f"e{i + j}": NovikovScalar.constant(coeff, CAP)}
    return AInftyData(generators=generators, operations=operations, cap=CAP, k_max=3,
                      label=f"truncated polynomial algebra, k={k}")


def _mc_skeleton(rng: random.Random) -> Tuple[List[Generator], OpTable, List[str]]:
    """x_i in degree 1, y_i in degree 2, m_1 invertible from x-span to y-span, random m_2 of positive energy."""
    m = rng.randint(1, 3)
    xs = [Generator(name=f"x{i}", degree=1, level=0) for i in range(m)]
    ys = [Generator(name=f"y{i}", degree=2, level=0) for i in range(m)]
    operations: OpTable = {}
    for i in range(m):
        image = {f"y{i}": NovikovScalar.constant(rng.choice(NONZERO), CAP)}
        for j in range(i + 1, m):
            if rng.random() < 0.5:
                image[f"y{j}"] = NovikovScalar.constant(rng.choice(NONZERO), CAP)
        operations[(f"x{i}",)] = image
    for a in range(m):
        for b in range(m):
            if rng.random() < 0.6:
                out = f"y{rng.randrange(m)}"
                operations[(f"x{a}", f"x{b}")] = {
                    out: NovikovScalar.monomial(rng.choice(NONZERO), rng.choice(PRODUCT_ENERGIES), cap=CAP)
                }
    return xs + ys, operations, [g.name for g in xs]


def _plant(rng: random.Random, generators: List[Generator], operations: OpTable,
           unknowns: List[str]) -> Tuple[AInftyData, BoundingCochain]:
    planted = BoundingCochain(terms={
        x: NovikovScalar.monomial(rng.choice(NONZERO), rng.choice(PLANTED_ENERGIES), cap=CAP) for x in unknowns
    })
    flat = AInftyData(generators=tuple(generators), operations=operations, cap=CAP, k_max=2)
    curvature = {}
    for k in (1, 2):
        for out, s in apply_op(flat, [planted.terms] * k).items():
            curvature[out] = curvature[out] - s if out in curvature else -s
    ops = dict(operations)
    ops[()] = curvature
    return flat.with_operations(ops), planted


def mc_solvable_toy(seed: int) -> Tuple[AInftyData, BoundingCochain]:
    """A curved algebra whose unique bounding cochain in the x-span is the returned one."""
    rng = random.Random(seed)
    generators, operations, unknowns = _mc_skeleton(rng)
    algebra, planted = _plant(rng, generators, operations, unknowns)
    return algebra.model_copy(update={"label": "mc-solvable"}), planted


def mc_obstructed_toy(seed: int) -> Tuple[AInftyData, Fraction]:
    """The solvable toy plus a curvature term T^L·w on a class w outside the image of m_1; obstructed at L."""
    rng = random.Random(seed)
    generators, operations, unknowns = _mc_skeleton(rng)
    level = rng.choice(OBSTRUCTION_LEVELS)
    generators = generators + [Generator(name="w", degree=2, level=0)]
    algebra, _ = _plant(rng, generators, operations, unknowns)
    ops = dict(algebra.operations)
    curvature = dict(ops.get((), {}))
    curvature["w"] = NovikovScalar.monomial(1, level, cap=CAP)
    ops[()] = curvature
    return algebra.with_operations(ops).model_copy(update={"label": "mc-obstructed"}), level


class AssociativeFixture(FixtureBase):
    description = "m_2-only truncated polynomial algebra"

    @classmethod
    def build(cls, seed: int) -> AInftyData:
        return truncated_polynomial_algebra(seed)

    @classmethod
    def validate(cls, obj: AInftyData) -> bool:
        return ainfty_relation_check(obj).passed


class McSolvableFixture(FixtureBase):
    description = "curved algebra with a planted bounding cochain"

    @classmethod
    def build(cls, seed: int) -> AInftyData:
        return mc_solvable_toy(seed)[0]

    @classmethod
    def validate(cls, obj: AInftyData) -> bool:
        return isinstance(mc_solve(obj), BoundingCochain)


class McObstructedFixture(FixtureBase):
    description = "curved algebra with a planted obstruction class"

    @classmethod
    def build(cls, seed: int) -> AInftyData:
        return mc_obstructed_toy(seed)[0]

    @classmethod
    def validate(cls, obj: AInftyData) -> bool:
        return isinstance(mc_solve(obj), Obstructed)


get_fixture_registry().register("ainfty-assoc", AssociativeFixture)
get_fixture_registry().register("mc-solvable", McSolvableFixture)
get_fixture_registry().register("mc-obstructed", McObstructedFixture)
