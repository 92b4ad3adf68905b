"""
Seeded filtered complexes.

Random complexes are built as a direct sum of two-term pieces x → y and free
generators, then conjugated by a unipotent filtered automorphism P = 1 + N
(N strictly upper triangular in name order within each degree). Conjugation
keeps δ² = 0 and, since N has nonnegative order, the filtration.
"""

import logging
import random
from fractions import Fraction
from typing import List, Tuple

from ..complexes.models import FilteredComplex, FilteredMap, Generator, Matrix, compose, differential_map, identity_map
from ..complexes.operations import check_complex
from ..novikov import NovikovScalar
from ..spectral.vanishing import vanishing_criterion
from .base import FixtureBase, get_fixture_registry

logger = logging.getLogger(__name__)

CAP = Fraction(10)
MAX_GENERATORS = 12
COEFFICIENTS = [-3, -2, -1, 1, 2, 3]
BASE_LEVELS = [Fraction(k, 2) for k in range(5)]
ENERGIES = [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1)]


def _name(i: int) -> str:
    return f"g{i:02d}"


def _pieces(rng: random.Random, pairs: int, free: int, energies: List[Fraction],
            rises: List[Fraction]) -> Tuple[List[Generator], Matrix]:
    generators: List[Generator] = []
    differential: Matrix = {}
    for _ in range(pairs):
        p = rng.choice([0, 1])
        x = Generator(name=_name(len(generators)), degree=p, level=rng.choice(BASE_LEVELS))
        y = Generator(name=_name(len(generators) + 1), degree=p + 1,
                      level=x.level + rng.choice(rises))
        generators += [x, y]
        differential[(x.name, y.name)] = NovikovScalar.monomial(rng.choice(COEFFICIENTS), rng.choice(energies), cap=CAP)
    for _ in range(free):
        generators.append(Generator(name=_name(len(generators)), degree=rng.choice([0, 1, 2]),
                                    level=rng.choice(BASE_LEVELS)))
    return generators, differential


def _unipotent(rng: random.Random, c: FilteredComplex, density: float, min_shift: Fraction) -> FilteredMap:
    """N with entries g → h (g before h, same degree) of order at least ``min_shift``."""
    matrix: Matrix = {}
    for p in c.degrees():
        gens = c.in_degree(p)
        for i, g in enumerate(gens):
            for h in gens[i + 1:]:
                if rng.random() >= density:
                    continue
                energy = max(Fraction(0), g.level - h.level + min_shift) + rng.choice([Fraction(0), Fraction(1, 2)])
                matrix[(g.name, h.name)] = NovikovScalar.monomial(rng.choice(COEFFICIENTS), energy, cap=CAP)
    return FilteredMap(source=c, target=c, matrix=matrix)


def conjugate(c: FilteredComplex, n: FilteredMap) -> FilteredComplex:
    """The complex with differential (1 + N)∘δ∘(1 + N)⁻¹."""
    p = identity_map(c) + n
    minus_n = n.scale(NovikovScalar.constant(-1, c.cap))
    inverse = identity_map(c)
    power = identity_map(c)
    for _ in range(len(c.generators)):
        power = compose(minus_n, power)
        if power.is_zero:
            break
        inverse = inverse + power
    conjugated = compose(p, compose(differential_map(c), inverse))
    return c.with_differential(conjugated.matrix)


def random_gapped_complex(seed: int) -> FilteredComplex:
    """At most twelve generators, mixing order-zero and higher-order differential terms."""
    rng = random.Random(seed)
    pairs = rng.randint(1, 4)
    free = rng.randint(0, min(3, MAX_GENERATORS - 2 * pairs))
    generators, differential = _pieces(rng, pairs, free, ENERGIES, [Fraction(0), Fraction(1, 2)])
    base = FilteredComplex(generators=tuple(generators), differential=differential, cap=CAP)
    return conjugate(base, _unipotent(rng, base, 0.4, Fraction(0)))


def perturbed_acyclic_complex(seed: int) -> FilteredComplex:
    """An acyclic order-zero part plus perturbation terms of positive order."""
    rng = random.Random(seed)
    pairs = rng.randint(1, 5)
    generators, differential = _pieces(rng, pairs, 0, [Fraction(0)], [Fraction(0)])
    for (src, dst), scalar in list(differential.items()):
        if rng.random() < 0.5:
            extra = NovikovScalar.monomial(rng.choice(COEFFICIENTS), rng.choice([Fraction(1, 2), Fraction(1)]), cap=CAP)
            differential[(src, dst)] = scalar + extra
    base = FilteredComplex(generators=tuple(generators), differential=differential, cap=CAP)
    return conjugate(base, _unipotent(rng, base, 0.5, Fraction(1, 2)))


def two_generator_complex() -> FilteredComplex:
    """d(x) = y with x, y at the same level."""
    generators = (Generator(name="x", degree=0, level=0), Generator(name="y", degree=1, level=0))
    return FilteredComplex(generators=generators, differential={("x", "y"): NovikovScalar.one(CAP)}, cap=CAP)


class GappedComplexFixture(FixtureBase):
    description = "random gapped complex with at most twelve generators"

    @classmethod
    def build(cls, seed: int) -> FilteredComplex:
        return random_gapped_complex(seed)

    @classmethod
    def validate(cls, obj: FilteredComplex) -> bool:
        return check_complex(obj).passed


class PerturbedAcyclicFixture(FixtureBase):
    description = "acyclic leading differential with higher-order perturbations"

    @classmethod
    def build(cls, seed: int) -> FilteredComplex:
        return perturbed_acyclic_complex(seed)

    @classmethod
    def validate(cls, obj: FilteredComplex) -> bool:
        return check_complex(obj).passed and vanishing_criterion(obj)


class TwoGeneratorFixture(FixtureBase):
    description = "two generators x → y at one level (seed is ignored)"

    @classmethod
    def build(cls, seed: int) -> FilteredComplex:
        return two_generator_complex()

    @classmethod
    def validate(cls, obj: FilteredComplex) -> bool:
        return check_complex(obj).passed


get_fixture_registry().register("gapped-complex", GappedComplexFixture)
get_fixture_registry().register("perturbed-acyclic", PerturbedAcyclicFixture)
get_fixture_registry().register("two-generator", TwoGeneratorFixture)
