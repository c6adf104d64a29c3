"""Free dephasing exponent: closed form, derivative, quadrature oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephasing_pdd.spectral import (SpectralParams, gamma0_analytic,
                                    gamma0_derivative, gamma0_quadrature,
                                    spectral_density)

BATHS = [SpectralParams(0.5, 0.1), SpectralParams(1.0, 0.5),
         SpectralParams(3.0, 0.5), SpectralParams(2.0, 0.3, omega_c=2.0)]


class TestSpectralParams:
    def test_rejects_nonpositive_s(self):
        with pytest.raises(ValueError, match="Ohmicity"):
            SpectralParams(0.0, 0.5)

    def test_rejects_negative_eta(self):
        with pytest.raises(ValueError, match="coupling"):
            SpectralParams(1.0, -0.1)

    def test_rejects_nonpositive_cutoff(self):
        with pytest.raises(ValueError, match="cutoff"):
            SpectralParams(1.0, 0.5, omega_c=0.0)

    def test_ohmic_detection(self):
        assert SpectralParams(1.0, 0.5).is_ohmic
        assert not SpectralParams(3.0, 0.5).is_ohmic


class TestSpectralDensity:
    def test_vanishes_at_zero_frequency(self):
        for p in BATHS:
            assert spectral_density(p, 0.0) == 0.0

    def test_rejects_negative_frequency(self):
        with pytest.raises(ValueError, match="nonnegative"):
            spectral_density(BATHS[0], -1.0)

    def test_peak_at_s_omega_c(self):
        # d/dw [w^s e^(-w/wc)] = 0 at w = s wc
        p = SpectralParams(3.0, 0.5, omega_c=2.0)
        w = np.linspace(0.0, 40.0, 4001)
        peak = w[np.argmax(spectral_density(p, w))]
        assert peak == pytest.approx(p.s * p.omega_c, abs=0.02)

    def test_vectorized_matches_scalar(self):
        p = BATHS[2]
        w = np.array([0.0, 0.5, 1.0, 7.0])
        out = spectral_density(p, w)
        assert out.shape == w.shape
        for wi, oi in zip(w, out):
            assert spectral_density(p, float(wi)) == oi


class TestGamma0Analytic:
    def test_zero_at_t_zero(self):
        for p in BATHS:
            assert gamma0_analytic(p, 0.0) == 0.0

    def test_ohmic_closed_form(self):
        p = SpectralParams(1.0, 0.5)
        t = 7.0
        assert gamma0_analytic(p, t) == pytest.approx(
            0.25 * np.log(1.0 + t * t), rel=1e-14)

    def test_continuous_across_ohmic_threshold(self):
        # the s = 1 branch must agree with the generic branch nearby
        lo, hi = SpectralParams(1.0, 0.5), SpectralParams(1.0 + 1e-7, 0.5)
        for t in (0.5, 3.0, 20.0):
            assert gamma0_analytic(lo, t) == pytest.approx(
                gamma0_analytic(hi, t), rel=1e-5)

    def test_super_ohmic_saturates_with_revivals(self):
        # s = 3: late-time exponent dips back below its running maximum
        p = SpectralParams(3.0, 0.5)
        g = gamma0_analytic(p, np.linspace(0.0, 30.0, 600))
        assert np.max(g) > g[-1]
        assert g[-1] == pytest.approx(p.eta, rel=5e-3)  # eta * Gamma(2)

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError, match="nonnegative"):
            gamma0_analytic(BATHS[0], -0.1)

    @settings(max_examples=60, deadline=None)
    @given(s=st.floats(0.3, 4.0), t=st.floats(0.0, 50.0))
    def test_nonnegative(self, s, t):
        assert gamma0_analytic(SpectralParams(s, 0.5), t) >= 0.0

    @settings(max_examples=40, deadline=None)
    @given(s=st.floats(0.3, 2.0), t=st.floats(0.0, 40.0))
    def test_monotone_below_s_two(self, s, t):
        # sin(s arctan(u)) >= 0 for s <= 2, so Gamma0 never decreases
        p = SpectralParams(s, 0.5)
        assert gamma0_analytic(p, t + 0.25) >= gamma0_analytic(p, t) - 1e-12


class TestGamma0Derivative:
    @pytest.mark.parametrize("p", BATHS, ids=lambda p: f"s={p.s}")
    def test_analytic_matches_finite_difference(self, p):
        t = np.linspace(0.1, 25.0, 40)
        ana = gamma0_derivative(p, t)
        fd = gamma0_derivative(p, t, method="fd")
        assert np.max(np.abs(ana - fd)) < 1e-7

    def test_ohmic_reduction(self):
        # s = 1 analytic rate is eta wc^2 t / (1 + wc^2 t^2)
        p = SpectralParams(1.0, 0.5)
        t = 3.0
        assert gamma0_derivative(p, t) == pytest.approx(
            p.eta * t / (1.0 + t * t), rel=1e-13)

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError, match="unknown method"):
            gamma0_derivative(BATHS[0], 1.0, method="bogus")


class TestGamma0Quadrature:
    @pytest.mark.parametrize("p", BATHS, ids=lambda p: f"s={p.s}")
    def test_matches_closed_form(self, p):
        for t in (0.3, 2.0, 11.0):
            ref = gamma0_quadrature(p, t)
            assert gamma0_analytic(p, t) == pytest.approx(ref, rel=1e-8)

    def test_zero_time_and_zero_coupling(self):
        assert gamma0_quadrature(BATHS[1], 0.0) == 0.0
        assert gamma0_quadrature(SpectralParams(1.0, 0.0), 5.0) == 0.0

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            gamma0_quadrature(BATHS[0], -1.0)
        with pytest.raises(ValueError):
            gamma0_quadrature(BATHS[0], 1.0, tol=0.0)
