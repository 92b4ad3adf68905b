"""
Seeded exact triangles.

The middle complex is C' ⊕ C'' with d(z'') = d''z'' + φz'', where φ sends
free generators of C'' to free generators of C'. Then b is the inclusion of
C', c the projection to C'', h = 0 and c∘b = 0. C' lives at low levels and
C'' at high levels, and all differential orders avoid the gap windows.

The homotopy variant adds a cycle u to C' and a pair w → z to C'', with
b(u) = u + β·z, c(u) = γ·z and h(u) = η·w chosen so that c∘b = d''∘h.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Tuple

from ..complexes.models import FilteredComplex, FilteredMap, Generator, Matrix
from ..novikov import NovikovScalar
from ..triangle.hypotheses import check_seidel_hypotheses
from ..triangle.models import TriangleData
from .base import FixtureBase, get_fixture_registry

logger = logging.getLogger(__name__)

CAP = Fraction(10)
EPSILON = Fraction(1, 4)
LOW_LEVELS = [Fraction(0), Fraction(1, 2)]
HIGH_LEVELS = [Fraction(3), Fraction(7, 2)]
INTERNAL_ORDERS = [Fraction(0), Fraction(1), Fraction(3, 2)]
CONNECTING_ORDERS = [Fraction(0), Fraction(1)]
COEFFICIENTS = [-2, -1, 1, 2]


def _monomial(rng: random.Random, src: Generator, dst: Generator, order: Fraction) -> NovikovScalar:
    return NovikovScalar.monomial(rng.choice(COEFFICIENTS), order + src.level - dst.level, cap=CAP)


def _summand(rng: random.Random, prefix: str, levels: List[Fraction]) -> Tuple[FilteredComplex, List[Generator]]:
    """Two-term pieces plus free generators; the free generators are returned separately.

    One free generator in degree 0 and one in degree 1 are always present.
    """
    generators: List[Generator] = []
    differential: Matrix = {}
    for i in range(rng.randint(1, 2)):
        p = rng.choice([0, 1])
        x = Generator(name=f"{prefix}x{i}", degree=p, level=rng.choice(levels))
        order = rng.choice(INTERNAL_ORDERS)
        y_levels = [lv for lv in levels if lv <= x.level + order]
        y = Generator(name=f"{prefix}y{i}", degree=p + 1, level=rng.choice(y_levels))
        generators += [x, y]
        differential[(x.name, y.name)] = _monomial(rng, x, y, order)
    free = [Generator(name=f"{prefix}z{i}", degree=p, level=rng.choice(levels)) for i, p in enumerate([0, 1])]
    free += [Generator(name=f"{prefix}z{2 + i}", degree=rng.choice([0, 1, 2]), level=rng.choice(levels))
             for i in range(rng.randint(0, 1))]
    complex_ = FilteredComplex(generators=tuple(generators + free), differential=differential, cap=CAP)
    return complex_, free


def _homotopy_block(rng: random.Random) -> Tuple[Generator, Generator, Generator, Dict[str, NovikovScalar]]:
    """A fresh cycle u of C' and a pair w → z of C'' with c∘b(u) = d''h(u).

    b(u) = u + β·z, c(u) = γ·z and h(u) = η·w, where β + γ = η·κ for d''(w) = κ·z.
    """
    k = rng.choice([1, 2])
    u = Generator(name="au", degree=k, level=rng.choice(LOW_LEVELS))
    w = Generator(name="cw", degree=k - 1, level=rng.choice(HIGH_LEVELS))
    order = rng.choice(INTERNAL_ORDERS)
    z = Generator(name="cz", degree=k, level=rng.choice([lv for lv in HIGH_LEVELS if lv <= w.level + order]))
    kappa, eta, beta = (rng.choice(COEFFICIENTS) for _ in range(3))
    d_energy = order + w.level - z.level
    h_energy = rng.choice([Fraction(0), Fraction(1, 2)])
    energy = d_energy + h_energy
    scalars = {
        "d": NovikovScalar.monomial(kappa, d_energy, cap=CAP),
        "h": NovikovScalar.monomial(eta, h_energy, cap=CAP),
        "b": NovikovScalar.monomial(beta, energy, cap=CAP),
        "c": NovikovScalar.monomial(eta * kappa - beta, energy, cap=CAP),
    }
    return u, w, z, scalars


def random_triangle(seed: int, split: bool = False, homotopy: bool = False) -> TriangleData:
    """A triangle satisfying every hypothesis.

    ``split=True`` makes φ = 0 so the connecting maps vanish. ``homotopy=True``
    adds a block on which c∘b ≠ 0 and h ≠ 0; there b and c have terms of order
    at least 2ε.
    """
    rng = random.Random(seed)
    c_prime, free_prime = _summand(rng, "a", LOW_LEVELS)
    c_double_prime, free_double_prime = _summand(rng, "c", HIGH_LEVELS)

    phi: Dict[Tuple[str, str], NovikovScalar] = {}
    if not split:
        for src in free_double_prime:
            targets = [g for g in free_prime if g.degree == src.degree + 1]
            for dst in targets:
                if rng.random() < 0.7 or not phi:
                    phi[(src.name, dst.name)] = _monomial(rng, src, dst, rng.choice(CONNECTING_ORDERS))

    one = NovikovScalar.one(CAP)
    b_extra: Matrix = {}
    c_extra: Matrix = {}
    h_matrix: Matrix = {}
    if homotopy:
        u, w, z, scalars = _homotopy_block(rng)
        c_prime = FilteredComplex(generators=c_prime.generators + (u,), differential=c_prime.differential, cap=CAP)
        c_double_prime = FilteredComplex(
            generators=c_double_prime.generators + (w, z),
            differential={**c_double_prime.differential, (w.name, z.name): scalars["d"]},
            cap=CAP,
        )
        b_extra[(u.name, z.name)] = scalars["b"]
        if not scalars["c"].is_zero:
            c_extra[(u.name, z.name)] = scalars["c"]
        h_matrix[(u.name, w.name)] = scalars["h"]

    differential = dict(c_prime.differential)
    differential.update(c_double_prime.differential)
    differential.update(phi)
    middle = FilteredComplex(generators=c_prime.generators + c_double_prime.generators,
                             differential=differential, cap=CAP)
    b = FilteredMap(source=c_prime, target=middle,
                    matrix={**{(g.name, g.name): one for g in c_prime.generators}, **b_extra})
    c = FilteredMap(source=middle, target=c_double_prime,
                    matrix={**{(g.name, g.name): one for g in c_double_prime.generators}, **c_extra})
    h = FilteredMap(source=c_prime, target=c_double_prime, matrix=h_matrix, degree=-1)
    return TriangleData(c_prime=c_prime, middle=middle, c_double_prime=c_double_prime,
                        b=b, c=c, h=h, epsilon=EPSILON)


class TriangleFixture(FixtureBase):
    description = "extension 0 → C' → C → C'' → 0 with a nonzero connecting map"

    @classmethod
    def build(cls, seed: int) -> TriangleData:
        return random_triangle(seed)

    @classmethod
    def validate(cls, obj: TriangleData) -> bool:
        return check_seidel_hypotheses(obj).passed


class SplitTriangleFixture(TriangleFixture):
    description = "split extension C = C' ⊕ C''; connecting maps vanish"

    @classmethod
    def build(cls, seed: int) -> TriangleData:
        return random_triangle(seed, split=True)


class HomotopyTriangleFixture(TriangleFixture):
    description = "extension with a nonzero homotopy h and c∘b ≠ 0"

    @classmethod
    def build(cls, seed: int) -> TriangleData:
        return random_triangle(seed, homotopy=True)


get_fixture_registry().register("triangle", TriangleFixture)
get_fixture_registry().register("triangle-split", SplitTriangleFixture)
get_fixture_registry().register("triangle-homotopy", HomotopyTriangleFixture)
