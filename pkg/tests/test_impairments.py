"""Aging, oscillator, and reflector impairment model checks."""

import math

import numpy as np
import pytest
import scipy.stats

from irslink import (
    NOISELESS,
    SPEED_OF_LIGHT,
    OscillatorTrace,
    accumulate_phase_noise,
    age_gain,
    bessel_j0,
    correlation_coefficient,
    make_rng,
    max_doppler,
    oscillator_variance,
    sample_complex_normal,
    sample_reflector_noise,
)


class TestDoppler:
    def test_reference_value(self):
        # oracle: 3e9 * 30 / 299792458 evaluated at 60 digits
        assert max_doppler(30.0, 3e9) == pytest.approx(300.2076856783369, abs=1e-3)

    def test_speed_of_light_normalization(self):
        assert max_doppler(1.0, SPEED_OF_LIGHT) == 1.0

    def test_negative_speed_rejected(self):
        with pytest.raises(ValueError):
            max_doppler(-1.0, 3e9)

    def test_zero_speed(self):
        assert max_doppler(0.0, 3e9) == 0.0


class TestCorrelationCoefficient:
    def test_unity_at_zero_lag(self):
        assert correlation_coefficient(300.0, 1e-3, 0) == 1.0

    def test_zero_at_first_bessel_root(self):
        doppler = 2.404825557695773 / (2 * math.pi * 1e-3)
        assert abs(correlation_coefficient(doppler, 1e-3, 1)) <= 1e-9

    def test_reference_value(self):
        # oracle: J0(2 pi * 300.2076856783369 * 1e-3) via tests/oracles.py
        assert correlation_coefficient(300.2076856783369, 1e-3, 1) == pytest.approx(
            0.28980544959225085, abs=1e-12
        )

    def test_matches_bessel_j0(self):
        for doppler, slot, t in ((10.0, 1e-3, 1), (250.0, 1e-3, 3), (800.0, 5e-4, 7)):
            expected = bessel_j0(2 * math.pi * doppler * slot * t)
            assert correlation_coefficient(doppler, slot, t) == expected

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            correlation_coefficient(-1.0, 1e-3, 1)
        with pytest.raises(ValueError):
            correlation_coefficient(100.0, 0.0, 1)
        with pytest.raises(ValueError):
            correlation_coefficient(100.0, 1e-3, -1)


class TestAgeGain:
    def test_rho_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            age_gain(np.ones(4, dtype=complex), 1.5, make_rng(1))

    def test_identity_at_full_correlation(self):
        rng = make_rng(2)
        h0 = sample_complex_normal(rng, 16)
        state = rng.bit_generator.state
        aged = age_gain(h0, 1.0, rng)
        assert np.array_equal(aged, h0)
        assert rng.bit_generator.state == state

    def test_decorrelated_at_zero(self):
        rng = make_rng(3)
        h0 = sample_complex_normal(rng, 100_000)
        aged = age_gain(h0, 0.0, rng)
        corr = np.mean(aged * h0.conj())
        assert abs(corr) <= 0.02

    def test_cross_correlation_tracks_rho(self):
        rng = make_rng(4)
        h0 = sample_complex_normal(rng, 100_000)
        aged = age_gain(h0, 0.6, rng)
        assert np.mean(aged * h0.conj()).real == pytest.approx(0.6, abs=0.02)

    @pytest.mark.parametrize("rho", [0.0, 0.3, 0.6, 0.9, 1.0])
    def test_power_preserved(self, rho):
        rng = make_rng(5)
        h0 = sample_complex_normal(rng, 100_000)
        aged = age_gain(h0, rho, rng)
        assert np.mean(np.abs(aged) ** 2) == pytest.approx(1.0, rel=0.02)


class TestOscillatorVariance:
    def test_reference_value(self):
        # oracle: 4 pi^2 * 3e9 * 1e-18 * 1e-3 at 60 digits
        assert oscillator_variance(3e9, 1e-18, 1e-3) == pytest.approx(
            1.184352528130723e-10, abs=1e-15
        )

    def test_zero_constant(self):
        assert oscillator_variance(3e9, 0.0, 1e-3) == 0.0

    def test_linear_in_slot_duration(self):
        base = oscillator_variance(3e9, 1e-18, 1e-3)
        assert oscillator_variance(3e9, 1e-18, 3e-3) == pytest.approx(3 * base, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            oscillator_variance(0.0, 1e-18, 1e-3)
        with pytest.raises(ValueError):
            oscillator_variance(3e9, -1e-18, 1e-3)
        with pytest.raises(ValueError):
            oscillator_variance(3e9, 1e-18, 0.0)


class TestOscillatorTrace:
    def test_validation(self):
        with pytest.raises(ValueError):
            OscillatorTrace(0.0, 0.0, -1.0, 0.0)
        with pytest.raises(ValueError):
            OscillatorTrace(0.0, 0.0, 0.0, 0.0, t=-1)

    def test_slots_must_advance_in_order(self):
        trace = OscillatorTrace(0.0, 0.0, 0.1, 0.1)
        with pytest.raises(ValueError):
            accumulate_phase_noise(trace, 2, make_rng(1))
        stepped = accumulate_phase_noise(trace, 1, make_rng(1))
        assert stepped.t == 1
        with pytest.raises(ValueError):
            accumulate_phase_noise(stepped, 1, make_rng(1))

    def test_zero_variance_accumulates_exact_zero(self):
        trace = OscillatorTrace(0.4, -0.2, 0.0, 0.0)
        for t in range(1, 5):
            trace = accumulate_phase_noise(trace, t, make_rng(1))
        assert trace.delta_phi == 0.0
        assert trace.delta_psi == 0.0
        assert trace.phi0 == 0.4

    def test_wiener_statistics(self):
        # One long pass over 1e5 chains stepped to t=4 yields the increment
        # and cumulative samples for all moment checks at once.
        n = 100_000
        sigma_sq = 0.25
        rng = make_rng(77)
        cumulative = np.empty((4, n))
        for i in range(n):
            trace = OscillatorTrace(0.0, 0.0, sigma_sq, 0.0)
            for t in range(1, 5):
                trace = accumulate_phase_noise(trace, t, rng)
                cumulative[t - 1, i] = trace.delta_phi
        first = cumulative[0]
        assert np.var(first) == pytest.approx(sigma_sq, rel=0.05)
        assert np.mean(first) == pytest.approx(0.0, abs=0.01)
        assert np.var(cumulative[3]) == pytest.approx(4 * sigma_sq, rel=0.05)
        increments = np.diff(cumulative, axis=0)
        for a in range(increments.shape[0]):
            for b in range(a + 1, increments.shape[0]):
                corr = np.corrcoef(increments[a], increments[b])[0, 1]
                assert abs(corr) <= 0.02


class TestReflectorNoise:
    def test_negative_kappa_rejected(self):
        with pytest.raises(ValueError):
            sample_reflector_noise(-1.0, 8, make_rng(1))

    def test_size_validated(self):
        with pytest.raises(ValueError):
            sample_reflector_noise(1.0, 0, make_rng(1))

    def test_noiseless_sentinel_gives_exact_zeros(self):
        rng = make_rng(1)
        state = rng.bit_generator.state
        angles = sample_reflector_noise(NOISELESS, 200, rng)
        assert np.all(angles == 0.0)
        assert rng.bit_generator.state == state

    def test_uniform_at_zero_concentration(self):
        angles = sample_reflector_noise(0.0, 2000, make_rng(6))
        stat = scipy.stats.kstest(angles, scipy.stats.uniform(-math.pi, 2 * math.pi).cdf)
        assert stat.pvalue > 0.01

    def test_unit_concentration_resultant(self):
        # oracle: I1(1)/I0(1) via tests/oracles.py series
        angles = sample_reflector_noise(1.0, 100_000, make_rng(8))
        assert np.mean(np.cos(angles)) == pytest.approx(0.4463899658965345, abs=0.01)
