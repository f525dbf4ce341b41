r"""Time-variation impairments: channel aging, oscillator jitter, reflector noise.

Aging follows the Jakes model: the slot-t channel keeps a fraction rho_t of
the slot-0 realization, with rho_t = J0(2 pi f_d t T_s) and Doppler
f_d = f_c v / c. Free-running oscillators accumulate a Wiener phase with
per-slot increment variance sigma^2 = 4 pi^2 f_c c T_s. Reflectors add an
independent Von Mises phase error per element; kappa = +inf (NOISELESS) means
ideal elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .numerics import bessel_j0, sample_complex_normal, sample_gaussian, sample_von_mises

SPEED_OF_LIGHT = 299_792_458.0

NOISELESS = math.inf  # reflector concentration sentinel: no phase error


def max_doppler(speed_ms: float, carrier_hz: float) -> float:
    """Maximum Doppler shift f_d = f_c v / c in Hz."""
    if speed_ms < 0:
        raise ValueError("max_doppler: speed must be >= 0")
    if carrier_hz <= 0:
        raise ValueError("max_doppler: carrier frequency must be > 0")
    return carrier_hz * speed_ms / SPEED_OF_LIGHT


def correlation_coefficient(doppler_hz: float, slot_s: float, t: int) -> float:
    """Aging correlation rho_t = J0(2 pi f_d t T_s) between slots 0 and t."""
    if doppler_hz < 0:
        raise ValueError("correlation_coefficient: doppler must be >= 0")
    if slot_s <= 0:
        raise ValueError("correlation_coefficient: slot duration must be > 0")
    if t < 0:
        raise ValueError("correlation_coefficient: t must be >= 0")
    return bessel_j0(2 * math.pi * doppler_hz * slot_s * t)


def age_gain(h0: np.ndarray, rho: float, rng: np.random.Generator) -> np.ndarray:
    """Gauss-Markov aging: rho h0 + sqrt(1 - rho^2) eps, eps ~ CN(0, 1).

    Preserves per-entry power when E|h0|^2 = 1. rho = 1 returns h0 unchanged
    without consuming the generator.
    """
    if abs(rho) > 1:
        raise ValueError("age_gain: |rho| must be <= 1")
    h0 = np.asarray(h0, dtype=complex)
    if rho == 1:
        return h0.copy()
    eps = sample_complex_normal(rng, h0.shape)
    return rho * h0 + math.sqrt(1 - rho * rho) * eps


def oscillator_variance(carrier_hz: float, osc_const: float, slot_s: float) -> float:
    """Wiener phase increment variance sigma^2 = 4 pi^2 f_c c T_s."""
    if carrier_hz <= 0:
        raise ValueError("oscillator_variance: carrier frequency must be > 0")
    if osc_const < 0:
        raise ValueError("oscillator_variance: oscillator constant must be >= 0")
    if slot_s <= 0:
        raise ValueError("oscillator_variance: slot duration must be > 0")
    return 4 * math.pi**2 * carrier_hz * osc_const * slot_s


@dataclass(frozen=True)
class OscillatorTrace:
    """Accumulated BS/UE oscillator state for one frame.

    phi0/psi0 are the (unknown to the receiver) slot-0 phases; delta_phi and
    delta_psi are the Wiener increments accumulated through slot t.
    """

    phi0: float
    psi0: float
    sigma_phi_sq: float
    sigma_psi_sq: float
    t: int = 0
    delta_phi: float = 0.0
    delta_psi: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma_phi_sq < 0 or self.sigma_psi_sq < 0:
            raise ValueError("OscillatorTrace: increment variances must be >= 0")
        if self.t < 0:
            raise ValueError("OscillatorTrace: t must be >= 0")


def accumulate_phase_noise(
    trace: OscillatorTrace, t: int, rng: np.random.Generator
) -> OscillatorTrace:
    """Advance the oscillator state from slot t-1 to slot t.

    Each call adds one independent N(0, sigma^2) increment per oscillator, so
    Var(delta_phi) = t sigma_phi^2 after t steps. Slots must be visited in
    order; zero variance advances the state with exactly zero increments.
    """
    if t != trace.t + 1:
        raise ValueError(f"accumulate_phase_noise: expected t = {trace.t + 1}, got {t}")
    d_phi = sample_gaussian(rng, math.sqrt(trace.sigma_phi_sq))
    d_psi = sample_gaussian(rng, math.sqrt(trace.sigma_psi_sq))
    return replace(trace, t=t, delta_phi=trace.delta_phi + d_phi, delta_psi=trace.delta_psi + d_psi)


def sample_reflector_noise(kappa: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Per-element reflector phase errors, i.i.d. Von Mises(kappa), length n.

    kappa = NOISELESS (+inf) returns exact zeros without consuming the
    generator; kappa = 0 gives uniform errors on [-pi, pi).
    """
    if kappa < 0:
        raise ValueError("sample_reflector_noise: kappa must be >= 0")
    if n < 1:
        raise ValueError("sample_reflector_noise: n must be >= 1")
    if math.isinf(kappa):
        return np.zeros(n)
    return sample_von_mises(rng, kappa, n)
