"""
Tests for the spectral sequence engine and the vanishing criterion.
"""

import math
from fractions import Fraction

import pytest

from flesta.complexes import FilteredComplex, is_acyclic, residue_homology_ranks
from flesta.exceptions import CapTooSmall, NonGapped, NotAComplex, NotStabilized
from flesta.fixtures import perturbed_acyclic_complex, random_gapped_complex, two_generator_complex
from flesta.novikov import format_fraction
from flesta.spectral import (
    FiltrationScheme,
    compute_pages,
    default_scheme,
    detect_gap,
    euler_characteristic,
    injection_check,
    periodic_ranks,
    shift_page,
    stabilization,
    thin_part,
    vanishing_criterion,
)


def truncated(c: FilteredComplex, cap: Fraction) -> FilteredComplex:
    return FilteredComplex.from_json(dict(c.to_json(), cap=format_fraction(cap)))


@pytest.fixture
def shifted_pair():
    """d(x) = T y: the differential jumps two layers of width 1/2."""
    return FilteredComplex.from_json({
        "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}],
        "differential": [{"src": "x", "dst": "y", "scalar": [{"c": 1, "lambda": 1}]}],
        "cap": 10,
    })


class TestScheme:
    def test_default_scheme_without_gap(self):
        scheme = default_scheme(two_generator_complex())
        assert scheme.lambda0 == 1
        assert scheme.gap is None

    def test_default_scheme_halves_gap(self, shifted_pair):
        assert detect_gap(shifted_pair) == 1
        scheme = default_scheme(shifted_pair)
        assert scheme.lambda0 == Fraction(1, 2)
        assert scheme.gap == 1

    def test_step_must_be_positive(self):
        with pytest.raises(ValueError):
            FiltrationScheme(lambda0=0)

    @pytest.mark.parametrize("lambda0", [1, 2])
    def test_step_must_lie_below_gap(self, lambda0):
        with pytest.raises(ValueError, match="strictly below the gap"):
            FiltrationScheme(lambda0=lambda0, gap=1)
        assert FiltrationScheme(lambda0="1/2", gap=1).lambda0 == Fraction(1, 2)

    def test_layer(self):
        scheme = FiltrationScheme(lambda0="1/2")
        assert scheme.layer(Fraction(0)) == 0
        assert scheme.layer(Fraction(3, 4)) == 1
        assert scheme.layer(Fraction(1)) == 2


class TestPages:
    def test_two_generator_stabilizes_at_two(self):
        pages = compute_pages(two_generator_complex(), r_max=3)
        assert sum(pages[0].ranks().values()) == 20
        assert sum(pages[1].ranks().values()) == 0
        result = stabilization(pages)
        assert result.r0 == 2
        assert result.to_json() == {
            "stabilized_at": 2,
            "lambda0": "1",
            "limit": [],
            "novikov_ranks": {"0": 0, "1": 0},
        }

    def test_shifted_pair_needs_a_longer_differential(self, shifted_pair):
        pages = compute_pages(shifted_pair, r_max=4)
        assert pages[0].ranks() == pages[1].ranks() == pages[2].ranks()
        assert pages[3].ranks() != pages[2].ranks()
        result = stabilization(pages)
        assert result.r0 == 4
        assert result.novikov_ranks == {0: 0, 1: 0}
        # truncation at the cap leaves the top layers of x and the bottom layers of y
        assert {cell for cell, r in result.limit_ranks.items() if r} == {(0, 18), (0, 19), (1, 0), (1, 1)}

    def test_zero_differential_is_already_stable(self):
        c = FilteredComplex.from_json({"generators": [{"name": "a", "degree": 0}], "cap": 3})
        assert stabilization(compute_pages(c)).r0 == 1

    def test_not_stabilized_with_too_few_pages(self, shifted_pair):
        pages = compute_pages(shifted_pair, r_max=1)
        with pytest.raises(NotStabilized):
            stabilization(pages)

    def test_no_pages(self):
        with pytest.raises(NotStabilized):
            stabilization([])

    @pytest.mark.parametrize("seed", [1, 2, 3, 5, 8])
    def test_euler_characteristic_is_constant(self, seed):
        scheme = default_scheme(random_gapped_complex(seed))
        c = truncated(random_gapped_complex(seed), 6 * scheme.lambda0)
        pages = compute_pages(c, scheme, r_max=4)
        values = {euler_characteristic(page) for page in pages}
        assert len(values) == 1

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_limit_matches_direct_computation(self, seed):
        scheme = default_scheme(random_gapped_complex(seed))
        c = truncated(random_gapped_complex(seed), 8 * scheme.lambda0)
        pages = compute_pages(c, scheme)
        assert len(pages) == 8
        result = stabilization(pages)
        assert result.limit_ranks == pages[0].model.graded_homology_ranks()
        assert result.r0 <= len(pages) + 1

    @pytest.mark.parametrize("seed", [0, 2, 5])
    def test_fixture_complex_at_default_settings(self, seed):
        c = random_gapped_complex(seed)
        scheme = default_scheme(c)
        pages = compute_pages(c)
        assert len(pages) == math.floor(c.cap / scheme.lambda0)
        assert len({euler_characteristic(page) for page in pages}) == 1
        if (c.cap / scheme.lambda0).denominator == 1:
            # every bar dies by the page after the last layer
            assert stabilization(pages).limit_ranks == pages[0].model.graded_homology_ranks()

    @pytest.mark.acceptance
    @pytest.mark.parametrize("seed", range(50))
    def test_second_page_is_residue_homology_on_every_layer(self, seed):
        scheme = default_scheme(random_gapped_complex(seed))
        c = truncated(random_gapped_complex(seed), 6 * scheme.lambda0)
        pages = compute_pages(c, scheme, r_max=2)
        per_layer = int(scheme.lambda0 / pages[0].model.step)
        residue = residue_homology_ranks(c)
        for (p, q), rank in pages[1].ranks().items():
            assert rank == residue[p] * per_layer, (p, q)

    def test_step_larger_than_gap(self, shifted_pair):
        with pytest.raises(NonGapped, match="not below the gap"):
            compute_pages(shifted_pair, FiltrationScheme(lambda0=2))

    def test_step_equal_to_gap(self, shifted_pair):
        with pytest.raises(NonGapped, match="not below the gap"):
            compute_pages(shifted_pair, FiltrationScheme(lambda0=1))

    def test_filtration_violation(self):
        c = FilteredComplex.from_json({
            "generators": [{"name": "x", "degree": 0, "level": 1}, {"name": "y", "degree": 1}],
            "differential": [{"src": "x", "dst": "y", "scalar": [{"c": 1, "lambda": 0}]}],
        })
        with pytest.raises(NonGapped):
            compute_pages(c)

    def test_not_a_complex(self):
        c = FilteredComplex.from_json({
            "generators": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}, {"name": "z", "degree": 2}],
            "differential": [
                {"src": "x", "dst": "y", "scalar": [{"c": 1, "lambda": 0}]},
                {"src": "y", "dst": "z", "scalar": [{"c": 1, "lambda": 0}]},
            ],
        })
        with pytest.raises(NotAComplex):
            compute_pages(c)

    def test_cap_too_small(self, shifted_pair):
        with pytest.raises(CapTooSmall):
            compute_pages(shifted_pair, r_max=30)


class TestPageOperations:
    @pytest.fixture
    def first_page(self):
        return compute_pages(two_generator_complex(), r_max=1)[0]

    def test_page_json_lists_nonzero_cells(self, first_page):
        data = first_page.to_json()
        assert data["r"] == 1
        assert {"p": 0, "q": 0, "rank": 1} in data["cells"]
        assert len(data["cells"]) == 20

    def test_shift_page(self, first_page):
        shifted = shift_page(first_page, 1)
        assert shifted.rank(2, 0) == 1
        assert shifted.rank(0, 0) == 0
        assert euler_characteristic(shifted) == euler_characteristic(first_page)

    def test_periodic_ranks(self, first_page):
        assert periodic_ranks(first_page)[(0, 3)] == 1
        assert periodic_ranks(shift_page(first_page, 1)) == periodic_ranks(first_page)

    def test_injection_check(self):
        pages = compute_pages(two_generator_complex(), r_max=2)
        assert injection_check(pages, 0, 0, 1)


class TestVanishing:
    @pytest.mark.acceptance
    @pytest.mark.parametrize("seed", range(100))
    def test_perturbed_acyclic_vanishes(self, seed):
        c = perturbed_acyclic_complex(seed)
        assert vanishing_criterion(c)
        assert is_acyclic(c)

    def test_residue_survives_energy_shift(self, shifted_pair):
        assert not vanishing_criterion(shifted_pair)

    def test_threshold_includes_shifted_terms(self, shifted_pair):
        assert vanishing_criterion(shifted_pair, Fraction(2))
        assert not vanishing_criterion(shifted_pair, Fraction(1, 2))

    def test_thin_part(self, shifted_pair):
        assert thin_part(shifted_pair, Fraction(1, 2)).differential == {}

    def test_negative_order_is_rejected(self):
        c = FilteredComplex.from_json({
            "generators": [{"name": "x", "degree": 0, "level": 1}, {"name": "y", "degree": 1}],
            "differential": [{"src": "x", "dst": "y", "scalar": [{"c": 1, "lambda": 0}]}],
        })
        with pytest.raises(NonGapped):
            vanishing_criterion(c)
