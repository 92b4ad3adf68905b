"""Tests for the seeded fixture generators and their registry."""

import pytest

from flesta.fixtures import FixtureBase, FixtureRegistry, get_fixture_registry
from flesta.fixtures.complexes import GappedComplexFixture

ALL_KINDS = [
    "gapped-complex",
    "perturbed-acyclic",
    "two-generator",
    "triangle",
    "triangle-split",
    "triangle-homotopy",
    "ainfty-assoc",
    "mc-solvable",
    "mc-obstructed",
]


class TestFixtureRegistry:
    def test_all_kinds_registered(self):
        assert sorted(get_fixture_registry().list_available()) == sorted(ALL_KINDS)

    def test_unknown_kind(self):
        assert get_fixture_registry().get("spiral") is None

    def test_duplicate_registration(self):
        registry = FixtureRegistry()
        registry.register("gapped-complex", GappedComplexFixture)
        with pytest.raises(ValueError, match="already registered"):
            registry.register("gapped-complex", GappedComplexFixture)

    def test_rejects_non_fixture_classes(self):
        with pytest.raises(TypeError, match="FixtureBase"):
            FixtureRegistry().register("bad", object)

    def test_base_is_abstract(self):
        with pytest.raises(TypeError):
            FixtureBase()


@pytest.mark.parametrize("kind", ALL_KINDS)
class TestFixtureKinds:
    def test_same_seed_same_document(self, kind):
        fixture = get_fixture_registry().get(kind)
        assert fixture.generate(11) == fixture.generate(11)

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_built_objects_validate(self, kind, seed):
        fixture = get_fixture_registry().get(kind)
        assert fixture.validate(fixture.build(seed))

    def test_has_description(self, kind):
        assert get_fixture_registry().get(kind).description


def test_seeds_differ():
    fixture = get_fixture_registry().get("gapped-complex")
    documents = [fixture.generate(seed) for seed in range(5)]
    assert any(doc != documents[0] for doc in documents[1:])
