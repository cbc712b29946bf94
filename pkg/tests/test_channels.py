import numpy as np
import pytest
from conftest import evolved, tmsv
from hypothesis import given, settings
from hypothesis import strategies as st

from cvcorr.channels import (
    BathParams,
    asymptotic_cm,
    evolve_closed_form,
    evolve_ode,
    validate_bath,
)
from cvcorr.core import GaussianState, displace, is_physical
from cvcorr.errors import InvalidArgumentError, PhysicalityError
from cvcorr.quantifiers import gip

FIG_BATH = BathParams.uniform(2, N=0.5, gamma=1.0)


class TestBath:
    def test_valid(self):
        validate_bath(FIG_BATH)
        validate_bath(BathParams(1.0, (1.0,), (1.2,)))

    def test_squeezing_constraint(self):
        with pytest.raises(PhysicalityError, match="mode 1"):
            validate_bath(BathParams(1.0, (0.5, 1.0), (0.0, 1.5)))

    @pytest.mark.parametrize("gamma", [0.0, -1.0, np.inf])
    def test_gamma(self, gamma):
        with pytest.raises(PhysicalityError):
            validate_bath(BathParams(gamma, (0.5,)))

    def test_negative_occupation(self):
        with pytest.raises(PhysicalityError):
            validate_bath(BathParams(1.0, (-0.1,)))

    def test_length_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            BathParams(1.0, (0.5, 0.5), (0.0,))


class TestAsymptotic:
    def test_figure_bath(self):
        np.testing.assert_array_equal(asymptotic_cm(FIG_BATH), 2 * np.eye(4))

    def test_vacuum_bath(self):
        np.testing.assert_array_equal(asymptotic_cm(BathParams.uniform(2, N=0.0)), np.eye(4))

    def test_squeezed_bath(self):
        cm = asymptotic_cm(BathParams(1.0, (1.0,), (1.2,)))
        np.testing.assert_allclose(cm, [[5.4, 0], [0, 0.6]])
        assert is_physical(cm)

    @given(st.floats(0, 5), st.floats(0, 1), st.floats(0, 2 * np.pi))
    def test_physical_on_constraint_boundary(self, n, frac, arg):
        m = frac * np.sqrt(n * (n + 1)) * np.exp(1j * arg)
        assert is_physical(asymptotic_cm(BathParams(1.0, (n,), (m,))))

    def test_invalid(self):
        with pytest.raises(PhysicalityError):
            asymptotic_cm(BathParams(1.0, (1.0,), (1.5,)))


class TestEvolution:
    def test_time_zero(self):
        s = displace(tmsv(0.3), [1, 0, 0, 2])
        for out in (evolve_closed_form(s, FIG_BATH, 0.0), evolve_ode(s, FIG_BATH, 0.0)):
            np.testing.assert_array_equal(out.sigma, s.sigma)
            np.testing.assert_array_equal(out.d, s.d)

    def test_asymptote(self):
        out = evolve_closed_form(tmsv(0.3), FIG_BATH, 50.0)
        np.testing.assert_allclose(out.sigma, 2 * np.eye(4), atol=1e-12, rtol=0)

    def test_closed_form_value(self):
        s = tmsv(0.3)
        out = evolve_closed_form(s, FIG_BATH, 1.0)
        expected = np.exp(-1) * s.sigma + (1 - np.exp(-1)) * 2 * np.eye(4)
        np.testing.assert_allclose(out.sigma, expected, atol=1e-15)

    def test_first_moments_decay_at_half_rate(self):
        s = displace(tmsv(0.3), [1, 2, 3, 4])
        out = evolve_closed_form(s, BathParams.uniform(2, gamma=2.0), 0.7)
        np.testing.assert_allclose(out.d, np.exp(-0.7) * np.array([1, 2, 3, 4]))

    @pytest.mark.parametrize("t", [0.3, 1.0, 2.0])
    def test_ode_matches_closed_form(self, t):
        s = displace(evolved(0.8, 0.4, 0.0), [0.5, -1, 0, 1])
        bath = BathParams(1.0, (0.5, 1.0), (0.3 + 0.2j, 0.0))
        ode = evolve_ode(s, bath, t, 1e-3)
        closed = evolve_closed_form(s, bath, t)
        assert np.max(np.abs(ode.sigma - closed.sigma)) <= 1e-8
        assert np.max(np.abs(ode.d - closed.d)) <= 1e-8

    def test_ode_fourth_order(self):
        s = tmsv(0.8)
        closed = evolve_closed_form(s, FIG_BATH, 2.0).sigma
        gaps = [np.max(np.abs(evolve_ode(s, FIG_BATH, 2.0, dt).sigma - closed)) for dt in (0.2, 0.1, 0.05)]
        ratios = [gaps[0] / gaps[1], gaps[1] / gaps[2]]
        for ratio in ratios:
            assert 14 < ratio < 18

    def test_ode_partial_final_step(self):
        s = tmsv(0.5)
        ode = evolve_ode(s, FIG_BATH, 1.05, 0.1)
        assert np.max(np.abs(ode.sigma - evolve_closed_form(s, FIG_BATH, 1.05).sigma)) < 1e-6

    def test_bad_arguments(self):
        with pytest.raises(InvalidArgumentError):
            evolve_closed_form(tmsv(0.3), FIG_BATH, -1.0)
        with pytest.raises(InvalidArgumentError):
            evolve_ode(tmsv(0.3), FIG_BATH, 1.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            evolve_closed_form(tmsv(0.3), BathParams.uniform(1), 1.0)
        with pytest.raises(PhysicalityError):
            evolve_closed_form(GaussianState.from_sigma(0.5 * np.eye(4)), FIG_BATH, 1.0)

    @settings(max_examples=40)
    @given(st.floats(0, 3), st.floats(0, 3), st.floats(0, 1.5), st.floats(0, np.pi))
    def test_semigroup(self, t1, t2, r, theta):
        s = evolved(r, theta, 0.0)
        twice = evolve_closed_form(evolve_closed_form(s, FIG_BATH, t1), FIG_BATH, t2)
        once = evolve_closed_form(s, FIG_BATH, t1 + t2)
        np.testing.assert_allclose(twice.sigma, once.sigma, atol=1e-10, rtol=0)

    def test_fixed_point(self):
        s = GaussianState.from_sigma(asymptotic_cm(FIG_BATH))
        for t in (0.1, 1.0, 10.0):
            np.testing.assert_allclose(evolve_closed_form(s, FIG_BATH, t).sigma, s.sigma, atol=1e-14)

    @settings(max_examples=40)
    @given(st.floats(0, 2), st.floats(0, np.pi), st.floats(0, 5), st.floats(0, 2))
    def test_physical_and_convex(self, r, theta, t, n):
        bath = BathParams.uniform(2, N=n)
        s = evolved(r, theta, 0.0)
        out = evolve_closed_form(s, bath, t).sigma
        assert is_physical(out)
        lo = np.minimum(s.sigma, asymptotic_cm(bath)) - 1e-12
        hi = np.maximum(s.sigma, asymptotic_cm(bath)) + 1e-12
        assert np.all((lo <= out) & (out <= hi))


class TestLocalBath:
    def test_only_selected_mode_changes(self):
        s = evolved(0.8, 0.0, 0.1)
        out = evolve_closed_form(s, FIG_BATH, 0.4, modes=[1])
        np.testing.assert_array_equal(out.sigma[:2, :2], s.sigma[:2, :2])
        np.testing.assert_allclose(out.sigma[:2, 2:], np.exp(-0.2) * s.sigma[:2, 2:])
        np.testing.assert_allclose(
            out.sigma[2:, 2:], np.exp(-0.4) * s.sigma[2:, 2:] + (1 - np.exp(-0.4)) * 2 * np.eye(2)
        )

    def test_both_modes_equals_global(self):
        s = evolved(0.8, 0.3, 0.1)
        np.testing.assert_allclose(
            evolve_closed_form(s, FIG_BATH, 0.4, modes=[0, 1]).sigma,
            evolve_closed_form(s, FIG_BATH, 0.4).sigma,
            atol=1e-15,
        )

    @pytest.mark.parametrize("r", [0.3, 0.8, 1.2])
    @pytest.mark.parametrize("theta", [0.0, np.pi / 3, np.pi / 2])
    @pytest.mark.parametrize("t", [0.1, 0.5, 1.0])
    def test_gip_not_increased_by_noise_on_b(self, r, theta, t):
        s = evolved(r, theta, t)
        for extra in (0.05, 0.5, 2.0):
            noisy = evolve_closed_form(s, FIG_BATH, extra, modes=[1])
            assert gip(noisy.sigma) <= gip(s.sigma) + 1e-6
