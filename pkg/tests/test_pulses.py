"""Pulse schedules and the controlled decoherence exponent."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephasing_pdd.pulses import (ControlledDecoherence, PulseSchedule,
                                  controlled_gamma,
                                  controlled_gamma_quadrature,
                                  free_decoherence, pdd_schedule)
from dephasing_pdd.spectral import (SpectralParams, gamma0_analytic,
                                    gamma0_derivative)

OHMIC = SpectralParams(1.0, 0.5)


def schedules(max_pulses=8, tau_f=10.0):
    """Strictly increasing, well-separated instants inside (0, tau_f)."""
    return st.lists(st.floats(0.3, tau_f - 0.3), min_size=1,
                    max_size=max_pulses, unique=True).map(
        lambda xs: tuple(np.sort(xs))).filter(
        lambda xs: np.all(np.diff(xs) > 1e-2) if len(xs) > 1 else True)


class TestPulseSchedule:
    def test_rejects_unsorted_instants(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            PulseSchedule((3.0, 2.0), 10.0)

    def test_rejects_out_of_range_instants(self):
        with pytest.raises(ValueError, match="inside"):
            PulseSchedule((0.0, 2.0), 10.0)
        with pytest.raises(ValueError, match="inside"):
            PulseSchedule((2.0, 10.0), 10.0)

    def test_rejects_nonpositive_tau_f(self):
        with pytest.raises(ValueError, match="tau_f"):
            PulseSchedule((), 0.0)

    def test_empty_schedule_is_free_decay(self):
        sched = PulseSchedule((), 10.0)
        assert sched.n_pulses == 0
        gamma = ControlledDecoherence(free_decoherence(OHMIC), sched)
        for t in (0.0, 3.0, 12.0):
            assert gamma(t) == pytest.approx(gamma0_analytic(OHMIC, t))

    def test_spacing(self):
        assert pdd_schedule(4, 10.0).spacing == pytest.approx(2.0)

    def test_pdd_instants(self):
        sched = pdd_schedule(10, 10.0)
        expected = [10.0 * n / 11.0 for n in range(1, 11)]
        assert sched.instants == pytest.approx(expected)

    def test_pdd_rejects_negative_count(self):
        with pytest.raises(ValueError, match="nonnegative"):
            pdd_schedule(-1, 10.0)


class TestControlledDecoherence:
    def test_free_before_first_pulse(self):
        sched = pdd_schedule(4, 10.0)
        gamma = ControlledDecoherence(free_decoherence(OHMIC), sched)
        for t in (0.0, 0.5, 1.99):
            assert gamma(t) == pytest.approx(gamma0_analytic(OHMIC, t),
                                             abs=1e-14)

    def test_hand_anchor(self):
        # single pulse at tau_1 = 5, evaluated at t = 10, s = 1, eta = 0.5:
        # Gamma = Gamma0(10) - 2 Gamma0(5) + 2 Gamma0(5) - Gamma0(10) ...
        # expands to ln 26 - 0.25 ln 101
        sched = PulseSchedule((5.0,), 10.0)
        gamma = ControlledDecoherence(free_decoherence(OHMIC), sched)
        assert gamma(10.0) == pytest.approx(
            np.log(26.0) - 0.25 * np.log(101.0), abs=1e-12)

    def test_wrapper_matches_class(self):
        sched = pdd_schedule(3, 10.0)
        base = free_decoherence(OHMIC)
        gamma = ControlledDecoherence(base, sched)
        for t in (1.0, 4.7, 9.0, 14.0):
            assert controlled_gamma(base, sched, t) == gamma(t)

    def test_vectorized_matches_scalar(self):
        sched = pdd_schedule(5, 10.0)
        gamma = ControlledDecoherence(free_decoherence(OHMIC), sched)
        ts = np.linspace(0.0, 20.0, 37)
        vec = gamma(ts)
        assert vec.shape == ts.shape
        assert vec == pytest.approx([gamma(float(t)) for t in ts])

    def test_rejects_negative_time(self):
        gamma = ControlledDecoherence(free_decoherence(OHMIC),
                                      pdd_schedule(2, 10.0))
        with pytest.raises(ValueError, match="nonnegative"):
            gamma(-1.0)

    def test_derivative_requires_base_derivative(self):
        gamma = ControlledDecoherence(free_decoherence(OHMIC),
                                      pdd_schedule(2, 10.0))
        with pytest.raises(ValueError, match="derivative"):
            gamma.derivative(1.0)

    def test_derivative_matches_finite_difference(self):
        p = SpectralParams(3.0, 0.5)
        sched = pdd_schedule(4, 10.0)
        gamma = ControlledDecoherence(
            lambda t: gamma0_analytic(p, t), sched,
            base_derivative=lambda t: gamma0_derivative(p, t))
        h = 1e-6
        for t in (1.3, 3.1, 7.7, 12.0):  # away from pulse instants
            fd = (gamma(t + h) - gamma(t - h)) / (2.0 * h)
            assert gamma.derivative(t) == pytest.approx(fd, rel=1e-6,
                                                        abs=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(instants=schedules())
    def test_continuity_at_pulse_instants(self, instants):
        eps = 1e-6
        gamma = ControlledDecoherence(free_decoherence(OHMIC),
                                      PulseSchedule(instants, 10.0))
        for tau in instants:
            jump = abs(gamma(tau - eps) - gamma(tau + eps))
            slope = abs(gamma(tau + 10 * eps) - gamma(tau + eps)) / (9 * eps)
            assert jump <= 1e-4 * max(1.0, slope)

    @settings(max_examples=15, deadline=None)
    @given(instants=schedules(max_pulses=5))
    def test_nonnegative_exponent(self, instants):
        # Gamma(t) = int J/(2 w^2) |f|^2 >= 0 for any schedule
        gamma = ControlledDecoherence(free_decoherence(OHMIC),
                                      PulseSchedule(instants, 10.0))
        assert np.all(gamma(np.linspace(0.0, 15.0, 120)) >= -1e-12)


class TestFilterFunctionOracle:
    @pytest.mark.parametrize("s", [1.0, 3.0])
    def test_matches_expansion(self, s):
        p = SpectralParams(s, 0.5)
        sched = pdd_schedule(3, 10.0)
        gamma = ControlledDecoherence(free_decoherence(p), sched)
        for t in (1.0, 4.0, 8.5, 13.0):
            ref = controlled_gamma_quadrature(p, sched, t)
            assert gamma(t) == pytest.approx(ref, rel=1e-7)

    def test_trivial_cases(self):
        sched = pdd_schedule(2, 10.0)
        assert controlled_gamma_quadrature(OHMIC, sched, 0.0) == 0.0
        frozen = SpectralParams(1.0, 0.0)
        assert controlled_gamma_quadrature(frozen, sched, 5.0) == 0.0
        with pytest.raises(ValueError, match="nonnegative"):
            controlled_gamma_quadrature(OHMIC, sched, -1.0)
