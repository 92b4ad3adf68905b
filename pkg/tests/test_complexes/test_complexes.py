"""
Tests for filtered complexes: parsing, checks, orders and cohomology.
"""

from fractions import Fraction

import pytest

from flesta.complexes import (
    AnchoredGeneratorSet,
    AnchoredPoint,
    Decoration,
    FilteredComplex,
    Interval,
    check_complex,
    complex_gap,
    deck_related,
    differential_map,
    gap_check,
    is_acyclic,
    leading_part,
    map_order,
    normalize_anchored,
    novikov_homology_ranks,
    parity_view,
    residue_homology_ranks,
    split_by_threshold,
)
from flesta.exceptions import InconsistentEquivalence, InputError, UnsupportedGrading, ZeroMap
from flesta.novikov import NovikovScalar, PiGroup, PiGroupElement


def make_complex(gens, entries, cap=10):
    return FilteredComplex.from_json({
        "generators": [{"name": n, "degree": d, "level": lvl} for n, d, lvl in gens],
        "differential": [{"src": s, "dst": t, "scalar": terms} for s, t, terms in entries],
        "cap": cap,
    })


@pytest.fixture
def exact_pair():
    """d(x) = y at equal levels: acyclic with acyclic residue."""
    return make_complex([("x", 0, 0), ("y", 1, 0)], [("x", "y", [{"c": 1, "lambda": 0}])])


@pytest.fixture
def shifted_pair():
    """d(x) = T y: acyclic over the Novikov field, but the residue differential vanishes."""
    return make_complex([("x", 0, 0), ("y", 1, 0)], [("x", "y", [{"c": 1, "lambda": 1}])])


class TestParsing:
    def test_round_trip(self, shifted_pair):
        again = FilteredComplex.from_json(shifted_pair.to_json())
        assert again.to_json() == shifted_pair.to_json()

    def test_duplicate_generator(self):
        with pytest.raises(InputError, match="duplicate generator") as excinfo:
            make_complex([("x", 0, 0), ("x", 1, 0)], [])
        assert excinfo.value.pointer == "/generators/1/name"

    def test_unknown_target(self):
        with pytest.raises(InputError, match="unknown generator") as excinfo:
            make_complex([("x", 0, 0)], [("x", "z", [{"c": 1, "lambda": 0}])])
        assert excinfo.value.pointer == "/differential/0/dst"

    def test_missing_field(self):
        with pytest.raises(InputError):
            FilteredComplex.from_json({"differential": []})

    def test_entries_truncated_to_cap(self):
        c = make_complex([("x", 0, 0), ("y", 1, 0)],
                         [("x", "y", [{"c": 1, "lambda": 1}, {"c": 1, "lambda": 5}])], cap=3)
        assert c.entry("x", "y").terms == ((Fraction(1), Fraction(1), 0),)


class TestCheckComplex:
    def test_valid_complex(self, exact_pair):
        report = check_complex(exact_pair)
        assert report.passed
        assert report.violations == []

    def test_degree_violation(self):
        c = make_complex([("x", 0, 0), ("y", 2, 0)], [("x", "y", [{"c": 1, "lambda": 0}])])
        kinds = [v.kind for v in check_complex(c).violations]
        assert kinds == ["degree"]

    def test_filtration_violation(self):
        c = make_complex([("x", 0, 1), ("y", 1, 0)], [("x", "y", [{"c": 1, "lambda": 0}])])
        report = check_complex(c)
        assert not report.passed
        assert [v.kind for v in report.violations] == ["filtration"]

    def test_square_violation(self):
        c = make_complex(
            [("x", 0, 0), ("y", 1, 0), ("z", 2, 0)],
            [("x", "y", [{"c": 1, "lambda": 0}]), ("y", "z", [{"c": 1, "lambda": 0}])],
        )
        violations = check_complex(c).violations
        assert [(v.kind, v.src, v.dst) for v in violations] == [("square", "x", "z")]

    def test_square_above_cap_is_ignored(self):
        c = make_complex(
            [("x", 0, 0), ("y", 1, 0), ("z", 2, 0)],
            [("x", "y", [{"c": 1, "lambda": 2}]), ("y", "z", [{"c": 1, "lambda": 2}])],
            cap=3,
        )
        assert check_complex(c).passed


class TestOrders:
    def test_complex_order(self):
        c = make_complex([("x", 0, 0), ("y", 1, 0)], [("x", "y", [{"c": 1, "lambda": "1/2"}])])
        assert map_order(differential_map(c)).low == Fraction(1, 2)
        assert complex_gap(c) == {Fraction(1, 2)}

    def test_zero_map_has_no_order(self):
        c = make_complex([("x", 0, 0)], [])
        with pytest.raises(ZeroMap):
            map_order(differential_map(c))

    def test_gap_check(self):
        c = make_complex([("x", 0, 0), ("y", 1, 0)], [("x", "y", [{"c": 1, "lambda": "1/2"}])])
        assert not gap_check(c, Interval.open(Fraction(0), Fraction(1)))
        assert gap_check(c, Interval.open(Fraction(0), Fraction(1, 2)))
        assert gap_check(c, Interval.half_open(Fraction(1), None))

    def test_interval_str(self):
        assert str(Interval.open(Fraction(0), Fraction(1, 2))) == "(0;1/2)"
        assert str(Interval.half_open(Fraction(1), None)) == "[1;∞)"

    def test_split_by_threshold_sums_back(self):
        c = make_complex([("x", 0, 0), ("y", 1, 0)],
                         [("x", "y", [{"c": 1, "lambda": 0}, {"c": 2, "lambda": 1}])])
        f = differential_map(c)
        low, high = split_by_threshold(f, Fraction(1, 2))
        assert low.entry("x", "y") == NovikovScalar.monomial(1, 0, cap=10)
        assert high.entry("x", "y") == NovikovScalar.monomial(2, 1, cap=10)
        assert (low + high).matrix == f.matrix

    def test_split_threshold_must_be_positive(self, exact_pair):
        with pytest.raises(ValueError):
            split_by_threshold(differential_map(exact_pair), Fraction(0))

    def test_leading_part_keeps_order_zero_terms(self):
        c = make_complex([("x", 0, 0), ("y", 1, 0)],
                         [("x", "y", [{"c": 1, "lambda": 0}, {"c": 2, "lambda": 1}])])
        assert leading_part(c).entry("x", "y").same_terms(NovikovScalar.one())

    def test_parity_view(self, exact_pair):
        assert parity_view(exact_pair) == {"x": 0, "y": 1}


class TestHomology:
    def test_exact_pair_is_acyclic(self, exact_pair):
        assert is_acyclic(exact_pair)
        assert residue_homology_ranks(exact_pair) == {0: 0, 1: 0}

    def test_energy_shift_kills_residue_differential(self, shifted_pair):
        assert novikov_homology_ranks(shifted_pair) == {0: 0, 1: 0}
        assert residue_homology_ranks(shifted_pair) == {0: 1, 1: 1}

    def test_free_generators(self):
        c = make_complex([("a", 0, 0), ("b", 2, 1)], [])
        assert novikov_homology_ranks(c) == {0: 1, 2: 1}

    def test_e_exponent_is_rejected(self):
        c = make_complex([("x", 0, 0), ("y", -1, 0)], [("x", "y", [{"c": 1, "lambda": 0, "mu": 1}])])
        assert check_complex(c).passed
        with pytest.raises(UnsupportedGrading):
            novikov_homology_ranks(c)


class TestAnchoredGenerators:
    @pytest.fixture
    def generators(self):
        return AnchoredGeneratorSet(
            points=(AnchoredPoint(name="p", action=1, index=3), AnchoredPoint(name="q", action=0, index=0)),
            decorations=(Decoration(label="p'", point="p", energy=Fraction(1, 2), mu=1, action=1, index=1),),
            pi_group=PiGroup(generators=[PiGroupElement(energy=1, maslov=2)]),
        )

    def test_normalization(self, generators):
        norm = normalize_anchored(generators)
        assert [(g.name, g.degree) for g in norm.complex.generators] == [("p", 1), ("q", 0)]
        point, scalar = norm.image("p")
        assert point == "p"
        assert scalar.same_terms(NovikovScalar.monomial(1, 1, 1))

    def test_decoration_embedding(self, generators):
        point, scalar = normalize_anchored(generators).image("p'")
        assert point == "p"
        # T^{1/2 + 1} e^{1 + (1 - 1)/2}
        assert scalar.same_terms(NovikovScalar.monomial(1, Fraction(3, 2), 1))

    def test_inconsistent_decorations(self):
        gens = AnchoredGeneratorSet(
            points=(AnchoredPoint(name="p"),),
            decorations=(Decoration(label="d", point="p", energy=1),
                         Decoration(label="d", point="p", energy=2)),
        )
        with pytest.raises(InconsistentEquivalence):
            normalize_anchored(gens)

    def test_unknown_decoration_point(self):
        with pytest.raises(ValueError):
            AnchoredGeneratorSet(points=(AnchoredPoint(name="p"),),
                                 decorations=(Decoration(label="d", point="z"),))

    def test_deck_related(self, generators):
        first = Decoration(label="a", point="p", action=0, index=0)
        second = Decoration(label="b", point="p", action=2, index=4)
        third = Decoration(label="c", point="p", action=1, index=0)
        assert deck_related(generators, first, second)
        assert not deck_related(generators, first, third)
