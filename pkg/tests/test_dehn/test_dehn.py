"""Tests for the model Dehn twist, its profiles and the sampled identity checks."""

import math

import numpy as np
import pytest

from flesta.dehn.checks import (
    endpoint_residual,
    functional_equation_residual,
    outside_residual,
    random_cotangent_points,
    run_dehn_checks,
    wobble_check,
)
from flesta.dehn.models import CotangentPoint, FibrationPoint, TwistProfile
from flesta.dehn.profiles import CubicProfile, ProfileBase, ProfileRegistry, get_profile_registry
from flesta.dehn.twist import model_dehn_twist, phi_map, sigma_t, twist_hamiltonian
from flesta.exceptions import InvalidProfile, OnSingularity, ZeroSection


@pytest.fixture
def zero_point():
    return CotangentPoint(u=[0.0, 0.0, 0.0], v=[0.0, 0.0, 1.0])


@pytest.fixture
def default_profile():
    return TwistProfile.build(lam=0.5)


class TestCotangentPoint:
    def test_rejects_non_unit_base(self):
        with pytest.raises(ValueError, match="expected 1"):
            CotangentPoint(u=[0.0, 0.0], v=[2.0, 0.0])

    def test_rejects_non_tangent_fiber(self):
        with pytest.raises(ValueError, match="expected 0"):
            CotangentPoint(u=[1.0, 1.0], v=[1.0, 0.0])

    def test_project_restores_invariants(self):
        p = CotangentPoint.project([0.3, 0.1], [2.0, 0.0])
        np.testing.assert_allclose(p.v, [1.0, 0.0])
        np.testing.assert_allclose(p.u, [0.0, 0.1])
        assert p.mu == pytest.approx(0.1)

    def test_fibration_point_checks_value(self):
        with pytest.raises(ValueError, match="differs"):
            FibrationPoint(x=[1.0, 1.0j], value=1.0)


class TestGeodesicFlow:
    def test_zero_time_is_identity(self, zero_point):
        assert sigma_t(zero_point, 0.0) is zero_point

    def test_pi_on_zero_section_is_antipodal(self, zero_point):
        np.testing.assert_allclose(sigma_t(zero_point, math.pi).v, [0.0, 0.0, -1.0])

    def test_other_times_undefined_on_zero_section(self, zero_point):
        with pytest.raises(ZeroSection):
            sigma_t(zero_point, 1.0)

    def test_flow_property(self):
        p = CotangentPoint(u=[0.0, 0.7, 0.0], v=[1.0, 0.0, 0.0])
        composed = sigma_t(sigma_t(p, 0.4), 1.3)
        assert composed.distance(sigma_t(p, 1.7)) < 1e-12

    def test_flow_preserves_length(self):
        p = CotangentPoint(u=[0.0, 0.7, 0.0], v=[1.0, 0.0, 0.0])
        assert sigma_t(p, 2.1).mu == pytest.approx(0.7)

    def test_half_turn_is_antipode(self):
        p = CotangentPoint(u=[0.0, 0.7, 0.0], v=[1.0, 0.0, 0.0])
        assert sigma_t(p, math.pi).distance(p.antipode()) < 1e-12


class TestProfiles:
    def test_registry_contents(self):
        assert {"default", "plateau"} <= set(get_profile_registry().list_available())

    def test_registry_rejects_duplicates_and_foreign_classes(self):
        registry = ProfileRegistry()
        registry.register("cubic", CubicProfile)
        with pytest.raises(ValueError, match="already registered"):
            registry.register("cubic", CubicProfile)
        with pytest.raises(TypeError):
            registry.register("bad", dict)

    def test_functional_equation_holds(self, default_profile):
        assert functional_equation_residual(default_profile) <= 1e-12

    def test_endpoint_angles(self, default_profile):
        assert endpoint_residual(default_profile) <= 1e-12
        assert default_profile.angle(0.0) == pytest.approx(math.pi)

    def test_support(self):
        t = np.array([-1.5, -1.0, 1.0, 1.5])
        np.testing.assert_allclose(CubicProfile.value(t), 0.0, atol=1e-15)

    def test_derivative_matches_values(self):
        t = np.linspace(-0.9, 0.9, 37)
        h = 1e-6
        numeric = (CubicProfile.value(t + h) - CubicProfile.value(t - h)) / (2 * h)
        np.testing.assert_allclose(numeric, CubicProfile.d1(t), atol=1e-6)

    @pytest.mark.parametrize("kwargs,match", [
        ({"name": "spiral"}, "unknown profile"),
        ({"lam": 1.5}, "less than or equal"),
        ({"name": "plateau", "level": 0.7}, "plateau level"),
        ({"name": "default", "level": 0.1}, "unknown profile parameters"),
    ])
    def test_invalid_profiles(self, kwargs, match):
        with pytest.raises(InvalidProfile, match=match):
            TwistProfile.build(**kwargs)

    def test_profile_base_is_abstract(self):
        with pytest.raises(TypeError):
            ProfileBase()


class TestWobble:
    def test_default_profile_is_wobbly(self, default_profile):
        assert wobble_check(default_profile)

    def test_plateau_below_delta_fails(self):
        assert not wobble_check(TwistProfile.build("plateau", delta=0.01, level=0.02))

    def test_plateau_above_delta_passes(self):
        assert wobble_check(TwistProfile.build("plateau", delta=0.05, level=0.02))

    def test_unbounded_delta_only_needs_monotonicity(self):
        profile = TwistProfile.build("plateau", delta=math.inf, level=0.02)
        assert profile.unbounded_delta
        assert wobble_check(profile)


class TestModelTwist:
    def test_zero_section_goes_to_antipode(self, zero_point, default_profile):
        image = model_dehn_twist(zero_point, default_profile)
        np.testing.assert_allclose(image.v, [0.0, 0.0, -1.0])

    def test_identity_outside_support(self, default_profile):
        points = random_cotangent_points(2, 30, np.random.default_rng(3), 0.5, 1.0)
        assert outside_residual(default_profile, points) == 0.0

    def test_hamiltonian_values(self, default_profile):
        outside = CotangentPoint(u=[0.0, 0.8], v=[1.0, 0.0])
        assert twist_hamiltonian(outside, default_profile) == 0.0
        zero = CotangentPoint(u=[0.0, 0.0], v=[1.0, 0.0])
        assert twist_hamiltonian(zero, default_profile) == pytest.approx(math.pi * 0.5 / 4)


class TestPhi:
    def test_real_point(self):
        p = phi_map(FibrationPoint.at([1.0, 0.0]))
        np.testing.assert_allclose(p.u, [0.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(p.v, [1.0, 0.0])

    def test_imaginary_point_rotated_back(self):
        p = phi_map(FibrationPoint.at([1.0j, 0.0]))
        np.testing.assert_allclose(p.u, [0.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(np.abs(p.v), [1.0, 0.0], atol=1e-12)

    def test_singular_fiber(self):
        p = phi_map(FibrationPoint.at([1.0, 1.0j]))
        np.testing.assert_allclose(p.u, [0.0, 1.0])
        np.testing.assert_allclose(p.v, [1.0, 0.0])

    def test_critical_point(self):
        with pytest.raises(OnSingularity):
            phi_map(FibrationPoint.at([0.0, 0.0]))


class TestRunChecks:
    @pytest.mark.acceptance
    @pytest.mark.parametrize("n", [1, 2])
    def test_default_profile_passes(self, n, default_profile):
        report = run_dehn_checks(n, default_profile, samples=200, seed=0)
        assert report.wobbly
        assert report.failures == []
        assert report.passed
        assert report.check("identity_outside").residual == 0.0
        assert report.check("symplectic").residual <= 1e-6
        assert report.check("exactness").residual <= 1e-4

    def test_printed_hamiltonian_is_informational(self, default_profile):
        report = run_dehn_checks(1, default_profile, samples=10, seed=1)
        printed = report.check("exactness_printed_k")
        assert printed.informational
        assert printed.residual > printed.tolerance

    def test_plateau_report_fails_on_wobble(self):
        profile = TwistProfile.build("plateau", lam=0.5, delta=0.01, level=0.02)
        report = run_dehn_checks(1, profile, samples=5, seed=0)
        assert not report.wobbly
        assert not report.passed

    def test_report_json(self, default_profile):
        data = run_dehn_checks(1, default_profile, samples=5, seed=2).to_json()
        assert data["lambda"] == 0.5
        assert data["samples"] == 5
        assert {c["name"] for c in data["checks"]} >= {"symplectic", "exactness", "phi_pullback"}

    def test_unbounded_delta_serialized(self):
        profile = TwistProfile.build(lam=0.5, delta=math.inf)
        assert run_dehn_checks(1, profile, samples=3).to_json()["delta"] == "inf"

    def test_unknown_check_name(self, default_profile):
        report = run_dehn_checks(1, default_profile, samples=3)
        with pytest.raises(KeyError):
            report.check("missing")
