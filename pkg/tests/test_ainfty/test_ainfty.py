"""
Tests for A∞ relations, bimodules, the Maurer-Cartan solver and deformations.
"""

from fractions import Fraction

import pytest

from flesta.ainfty import (
    AInftyData,
    BimoduleData,
    BoundingCochain,
    Obstructed,
    ainfty_relation_check,
    bimodule_check,
    bimodule_relation_check,
    deform,
    deformed_differential,
    diagonal_bimodule,
    flatness_residuals,
    mc_residual,
    mc_solve,
    relation_bar,
    relation_direct,
)
from flesta.exceptions import AInftyError, DivergenceRisk, InputError, SquareNonzero
from flesta.fixtures import mc_obstructed_toy, mc_solvable_toy, truncated_polynomial_algebra
from flesta.novikov import NovikovScalar

ONE = [{"c": 1, "lambda": 0}]


@pytest.fixture
def non_associative():
    """m_2(a, a) = b and m_2(b, a) = a, everything else zero."""
    return AInftyData.from_json({
        "generators": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
        "operations": [
            {"k": 2, "inputs": ["a", "a"], "output": "b", "scalar": ONE},
            {"k": 2, "inputs": ["b", "a"], "output": "a", "scalar": ONE},
        ],
        "k_max": 3,
    })


@pytest.fixture
def trivial_algebra():
    return {"generators": [{"name": "e", "degree": 0}]}


class TestAInftyData:
    def test_round_trip(self, non_associative):
        again = AInftyData.from_json(non_associative.to_json())
        assert again.to_json() == non_associative.to_json()

    def test_degree_rule(self):
        doc = {
            "generators": [{"name": "a", "degree": 0}, {"name": "b", "degree": 1}],
            "operations": [{"k": 2, "inputs": ["a", "a"], "output": "b", "scalar": ONE}],
        }
        with pytest.raises(InputError, match="shifted degree") as excinfo:
            AInftyData.from_json(doc)
        assert excinfo.value.pointer == "/operations/0/scalar"

    def test_arity_mismatch(self):
        doc = {
            "generators": [{"name": "a", "degree": 0}],
            "operations": [{"k": 2, "inputs": ["a"], "output": "a", "scalar": ONE}],
        }
        with pytest.raises(InputError, match="k = 2 but 1 inputs"):
            AInftyData.from_json(doc)

    def test_filtration_rule(self):
        doc = {
            "generators": [{"name": "a", "degree": 0, "level": 1}, {"name": "b", "degree": 0}],
            "operations": [{"k": 2, "inputs": ["a", "a"], "output": "b", "scalar": ONE}],
        }
        with pytest.raises(InputError, match="filtration"):
            AInftyData.from_json(doc)


class TestRelations:
    @pytest.mark.parametrize("seed", range(5))
    def test_associative_algebras_pass(self, seed):
        report = ainfty_relation_check(truncated_polynomial_algebra(seed))
        assert report.passed
        assert report.paths_agree
        assert report.checked > 0

    def test_non_associative_product_fails(self, non_associative):
        report = ainfty_relation_check(non_associative)
        assert not report.passed
        assert report.paths_agree
        failing = {(r.inputs, r.output) for r in report.residuals}
        assert (("a", "a", "a"), "a") in failing

    def test_direct_and_bar_evaluations_agree(self, non_associative):
        xs = ("a", "a", "a")
        direct = relation_direct(non_associative, xs)
        bar = relation_bar(non_associative, xs)
        assert set(direct) == set(bar)
        assert all(direct[k].same_terms(bar[k]) for k in direct)

    def test_k_max_override(self, non_associative):
        assert ainfty_relation_check(non_associative, k_max=2).passed

    def test_report_json(self, non_associative):
        data = ainfty_relation_check(non_associative).to_json()
        assert data["passed"] is False
        assert data["residuals"][0]["inputs"]


class TestBimodules:
    @pytest.mark.parametrize("seed", range(3))
    def test_diagonal_bimodule_of_associative_algebra(self, seed):
        bm = diagonal_bimodule(truncated_polynomial_algebra(seed))
        assert bimodule_relation_check(bm).passed

    @pytest.fixture
    def chain_bimodule(self, trivial_algebra):
        """n_{0,0}: p → q → r, so the deformed differential squares to p ↦ r."""
        return BimoduleData.from_json({
            "left": trivial_algebra,
            "right": trivial_algebra,
            "module": [{"name": "p", "degree": 0}, {"name": "q", "degree": 1}, {"name": "r", "degree": 2}],
            "operations": [
                {"input": "p", "output": "q", "scalar": ONE},
                {"input": "q", "output": "r", "scalar": ONE},
            ],
        })

    def test_square_nonzero(self, chain_bimodule):
        with pytest.raises(SquareNonzero):
            deformed_differential(chain_bimodule, BoundingCochain(), BoundingCochain())

    def test_bimodule_check_reports_square(self, chain_bimodule):
        report = bimodule_check(chain_bimodule, BoundingCochain(), BoundingCochain())
        assert not report.passed
        assert [(r.inputs, r.output) for r in report.square_residuals] == [(("p",), "r")]

    def test_unknown_module_generator(self, trivial_algebra):
        with pytest.raises(InputError):
            BimoduleData.from_json({
                "left": trivial_algebra,
                "right": trivial_algebra,
                "module": [{"name": "p", "degree": 0}],
                "operations": [{"input": "p", "output": "zz", "scalar": ONE}],
            })


class TestMaurerCartan:
    @pytest.mark.parametrize("seed", range(20))
    def test_recovers_planted_cochain(self, seed):
        algebra, planted = mc_solvable_toy(seed)
        solved = mc_solve(algebra)
        assert isinstance(solved, BoundingCochain)
        assert set(solved.terms) == set(planted.terms)
        for name, scalar in planted.terms.items():
            assert solved.terms[name].same_terms(scalar)
        assert mc_residual(algebra, solved) == {}

    @pytest.mark.parametrize("seed", range(20))
    def test_obstruction_level(self, seed):
        algebra, level = mc_obstructed_toy(seed)
        result = mc_solve(algebra)
        assert isinstance(result, Obstructed)
        assert result.level == level
        assert "w" in result.residual_class
        assert result.to_json()["obstructed"] is True

    def test_uncurved_algebra_has_zero_cochain(self):
        assert mc_solve(truncated_polynomial_algebra(0)).is_zero

    def test_curvature_at_filtration_zero_is_obstructed(self, trivial_algebra):
        doc = dict(trivial_algebra, generators=[{"name": "w", "degree": 2}],
                   operations=[{"k": 0, "inputs": [], "output": "w", "scalar": ONE}])
        result = mc_solve(AInftyData.from_json(doc))
        assert isinstance(result, Obstructed)
        assert result.level == 0

    def test_valuation_zero_cochain_diverges(self):
        algebra, _ = mc_solvable_toy(0)
        b = BoundingCochain(terms={"x0": NovikovScalar.constant(1, algebra.cap)})
        with pytest.raises(DivergenceRisk):
            mc_residual(algebra, b)

    def test_cochain_must_have_degree_one(self):
        algebra, _ = mc_solvable_toy(0)
        b = BoundingCochain(terms={"y0": NovikovScalar.monomial(1, 1, cap=algebra.cap)})
        with pytest.raises(AInftyError, match="wrong degree"):
            mc_residual(algebra, b)

    def test_cochain_json(self):
        b = BoundingCochain.from_json({"b": [{"generator": "x0", "scalar": [{"c": 2, "lambda": "1/2"}]}]})
        assert b.terms["x0"].valuation() == Fraction(1, 2)
        assert BoundingCochain.from_json(b.to_json()).to_json() == b.to_json()
        with pytest.raises(InputError):
            BoundingCochain.from_json({"b": "x0"})


class TestDeform:
    @pytest.mark.parametrize("seed", range(4))
    def test_deformation_by_solution_is_flat(self, seed):
        algebra, _ = mc_solvable_toy(seed)
        solved = mc_solve(algebra)
        curvature, squares = flatness_residuals(deform(algebra, solved))
        assert curvature == {}
        assert squares == []

    def test_deformation_by_zero_is_identity(self):
        algebra = truncated_polynomial_algebra(1)
        assert deform(algebra, BoundingCochain()).operations == algebra.operations

    def test_curvature_survives_wrong_cochain(self):
        algebra, planted = mc_solvable_toy(2)
        wrong = BoundingCochain(terms={name: s * 2 for name, s in planted.terms.items()})
        curvature, _ = flatness_residuals(deform(algebra, wrong))
        assert curvature
