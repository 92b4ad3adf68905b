"""
Tests for exact Novikov ring arithmetic.
"""

import random
from fractions import Fraction

import pytest

from flesta.exceptions import InputError, NotInvertible, OddIndex
from flesta.novikov import (
    INFINITY,
    NovikovScalar,
    PiGroup,
    PiGroupElement,
    as_fraction,
    format_fraction,
    nov_invert,
    pi_embed,
)

ENERGIES = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def random_scalar(rng: random.Random, max_terms: int = 3) -> NovikovScalar:
    terms = [
        (rng.randint(-3, 3), rng.choice(ENERGIES), rng.choice([0, 2]))
        for _ in range(rng.randint(0, max_terms))
    ]
    return NovikovScalar(terms)


def random_unit_like(rng: random.Random) -> NovikovScalar:
    """A scalar whose energies are pairwise distinct, so its leading term is invertible."""
    energies = sorted(rng.sample(ENERGIES, rng.randint(1, 3)))
    return NovikovScalar([(rng.choice([-2, -1, 1, 3]), lam, 0) for lam in energies])


@pytest.fixture
def rng():
    return random.Random(20240611)


class TestRationals:
    def test_as_fraction_accepts_strings(self):
        assert as_fraction("3/4") == Fraction(3, 4)
        assert as_fraction(2) == Fraction(2)

    def test_as_fraction_rejects_floats_and_booleans(self):
        with pytest.raises(TypeError):
            as_fraction(0.5)
        with pytest.raises(TypeError):
            as_fraction(True)

    def test_format_fraction(self):
        assert format_fraction(Fraction(6, 4)) == "3/2"
        assert format_fraction(Fraction(4, 2)) == "2"


class TestRingAxioms:
    def test_commutative_ring_laws(self, rng):
        for _ in range(1000):
            a, b, c = random_scalar(rng), random_scalar(rng), random_scalar(rng)
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a - a == NovikovScalar.zero()
            assert a * NovikovScalar.one() == a

    def test_like_terms_merge_and_cancel(self):
        s = NovikovScalar([(1, 1, 0), (2, 1, 0), (-3, 1, 0), (1, 2, 0)])
        assert s.terms == ((Fraction(1), Fraction(2), 0),)

    def test_truncation_drops_terms_at_or_above_cap(self):
        s = NovikovScalar([(1, 0, 0), (1, 1, 0), (1, 2, 0)], cap=2)
        assert len(s.terms) == 2
        assert s.truncate(1).terms == ((Fraction(1), Fraction(0), 0),)

    def test_integer_scaling(self):
        s = NovikovScalar.monomial(3, Fraction(1, 2))
        assert s * 2 == NovikovScalar.monomial(6, Fraction(1, 2))


class TestValuation:
    def test_zero_has_infinite_valuation(self):
        assert NovikovScalar.zero().valuation() == INFINITY

    def test_valuation_laws(self, rng):
        for _ in range(300):
            a, b = random_scalar(rng), random_scalar(rng)
            if not (a + b).is_zero:
                assert (a + b).valuation() >= min(a.valuation(), b.valuation())
            if not a.is_zero and not b.is_zero:
                assert (a * b).valuation() == a.valuation() + b.valuation()

    def test_degree_of_homogeneous_scalar(self):
        assert NovikovScalar.monomial(1, 0, 1).degree == 2
        assert NovikovScalar.monomial(1, 0, Fraction(1, 2)).degree == 1
        assert NovikovScalar([(1, 0, 0), (1, 1, 2)]).degree is None


class TestInversion:
    def test_inverse_is_exact_below_cap(self, rng):
        cap = 5
        for _ in range(100):
            a = random_unit_like(rng)
            inverse = nov_invert(a, cap)
            assert (a * inverse).truncate(cap).same_terms(NovikovScalar.one())

    def test_inverse_of_monomial(self):
        a = NovikovScalar.monomial(2, 3, 1)
        assert nov_invert(a, 10).same_terms(NovikovScalar.monomial(Fraction(1, 2), -3, -1))

    def test_zero_is_not_invertible(self):
        with pytest.raises(ZeroDivisionError):
            nov_invert(NovikovScalar.zero(), 3)

    def test_shared_leading_energy_is_not_invertible(self):
        a = NovikovScalar([(1, 0, 0), (1, 0, 2)])
        with pytest.raises(NotInvertible, match="leading energy"):
            nov_invert(a, 3)


class TestJson:
    def test_round_trip_preserves_cap(self):
        s = NovikovScalar([(Fraction(1, 3), Fraction(1, 2), 1), (-2, 4, 0)], cap=6)
        assert NovikovScalar.from_json(s.to_json()) == s

    def test_bare_term_list(self):
        s = NovikovScalar.from_json([{"c": "1/2", "lambda": 1, "mu": "1/2"}])
        assert s.terms == ((Fraction(1, 2), Fraction(1), 1),)

    def test_unsorted_terms_rejected(self):
        data = {"terms": [{"c": 1, "lambda": 2}, {"c": 1, "lambda": 1}]}
        with pytest.raises(InputError, match="strictly increasing") as excinfo:
            NovikovScalar.from_json(data, "/d")
        assert excinfo.value.pointer == "/d/terms/1"

    def test_zero_coefficient_rejected(self):
        with pytest.raises(InputError, match="zero coefficients"):
            NovikovScalar.from_json([{"c": 0, "lambda": 1}])

    def test_float_coefficient_rejected(self):
        with pytest.raises(InputError):
            NovikovScalar.from_json([{"c": 0.5, "lambda": 1}])


class TestPiGroup:
    @pytest.fixture
    def group(self):
        return PiGroup(generators=[
            PiGroupElement(energy=1, maslov=2),
            PiGroupElement(energy=Fraction(1, 2), maslov=0),
        ])

    def test_membership(self, group):
        assert group.contains(PiGroupElement(energy=Fraction(3, 2), maslov=2))
        assert group.contains(PiGroupElement(energy=-1, maslov=-4))
        assert group.contains(PiGroupElement.identity())
        assert not group.contains(PiGroupElement(energy=Fraction(1, 4), maslov=0))
        assert not group.contains(PiGroupElement(energy=0, maslov=1))

    def test_cyclic_group(self):
        group = PiGroup(generators=[PiGroupElement(energy=1, maslov=2)])
        assert group.contains(PiGroupElement(energy=2, maslov=4))
        assert not group.contains(PiGroupElement(energy=1, maslov=0))

    def test_empty_group_contains_only_identity(self):
        assert not PiGroup().contains(PiGroupElement(energy=1, maslov=0))

    def test_embedding_is_multiplicative(self, group):
        g, h = group.generators
        assert pi_embed(g + h) == pi_embed(g) * pi_embed(h)

    def test_odd_index(self):
        g = PiGroupElement(energy=1, maslov=3)
        assert pi_embed(g).degree == 3
        with pytest.raises(OddIndex):
            pi_embed(g, allow_half=False)
