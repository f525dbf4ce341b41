r"""Joint active/passive beamforming and slot-t SNR evaluation.

The design problem is max_{theta, w} |(g0^T Theta H0 + hd0^T) w|^2 over unit-
modulus reflection coefficients and a unit-norm transmit vector, solved by
alternating optimization on the estimated CSI: with w fixed, each reflected
term is co-phased with the direct term; with theta fixed, w is the MRT
beamformer. A brute-force grid scan serves as an oracle for small instances.

Two SNR evaluators cover the same quantity: `received_snr_full` keeps every
oscillator phase factor explicit, `received_snr_simplified` is the algebraic
reduction in which they cancel. Fed identical innovation draws they agree to
machine precision, which is the numerical form of the phase-invariance
property the tests pin down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelSet, Innovations, draw_innovations, evolve_channels
from .impairments import OscillatorTrace


class DegenerateChannelError(ValueError):
    """All-zero combined channel: beamforming direction is undefined."""


def combined_channel(cs: ChannelSet, theta: np.ndarray) -> np.ndarray:
    """Effective estimated row (g0 e^{j theta})^T H0 + hd0^T, shape (N_b,)."""
    return (cs.est_g0 * np.exp(1j * theta)) @ cs.est_H0 + cs.est_hd0


def passive_phase_update(w: np.ndarray, cs: ChannelSet) -> np.ndarray:
    """Optimal reflection phases for a fixed unit-norm transmit vector.

    theta_n = arg(hd0^T w) - arg(g0[n] (H0 row n) w), wrapped to [0, 2pi):
    every reflected term is rotated onto the direct term's phase, which
    maximizes the combined magnitude for this w. Without a direct link the
    reference phase is the first reflected term's (alignment is only relative
    in that case).
    """
    norm = float(np.linalg.norm(w))
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("passive_phase_update: w must be unit norm")
    reflected = cs.est_g0 * (cs.est_H0 @ w)
    direct = complex(cs.est_hd0 @ w)
    reference = direct if direct != 0 else complex(reflected[0])
    theta = np.mod(np.angle(reference) - np.angle(reflected), 2 * math.pi)
    return theta


def mrt_weights(cs: ChannelSet, theta: np.ndarray) -> np.ndarray:
    """Unit-norm MRT beamformer: conjugate of the combined row."""
    row = combined_channel(cs, theta)
    norm = float(np.linalg.norm(row))
    if norm == 0:
        raise DegenerateChannelError("mrt_weights: combined channel is zero")
    return row.conj() / norm


@dataclass(frozen=True)
class BeamformSolution:
    """Final AO iterate: transmit vector, reflection phases, and diagnostics.

    objective_trace holds |combined^T w|^2 at the start and after each
    iteration; the alternation guarantees it is non-decreasing.
    """

    w_star: np.ndarray
    theta_star: np.ndarray
    achieved_r0: float
    iterations_used: int
    objective_trace: np.ndarray


def _objective(cs: ChannelSet, theta: np.ndarray, w: np.ndarray) -> float:
    return float(abs(combined_channel(cs, theta) @ w) ** 2)


def optimize(cs: ChannelSet, iterations: int = 3, snr_scale: float = 1.0) -> BeamformSolution:
    """Alternating optimization from theta = 0, fixed iteration count.

    Each iteration runs the passive phase update followed by MRT. achieved_r0
    is log2(1 + snr_scale * final objective), the slot-0 rate when snr_scale
    is the transmit-power to noise-power ratio.
    """
    if iterations < 1:
        raise ValueError("optimize: iterations must be >= 1")
    theta = np.zeros(cs.n_reflectors)
    w = mrt_weights(cs, theta)
    trace = [_objective(cs, theta, w)]
    for _ in range(iterations):
        theta = passive_phase_update(w, cs)
        w = mrt_weights(cs, theta)
        trace.append(_objective(cs, theta, w))
    return BeamformSolution(
        w_star=w,
        theta_star=theta,
        achieved_r0=spectral_efficiency(snr_scale * trace[-1]),
        iterations_used=iterations,
        objective_trace=np.array(trace),
    )


_BRUTE_FORCE_MAX_POINTS = 2**20


def brute_force_optimize(cs: ChannelSet, levels: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Exhaustive (theta, w, objective) optimum over a discrete phase grid.

    Phases are scanned lexicographically over {2 pi k / levels}^N with MRT w
    at every grid point; the first point attaining the maximum wins. Guarded
    by total grid size (N <= 6 and levels^N <= 2^20), since feasibility
    depends on the combination rather than either number alone.
    """
    if levels < 1:
        raise ValueError("brute_force_optimize: levels must be >= 1")
    n = cs.n_reflectors
    if n > 6 or levels**n > _BRUTE_FORCE_MAX_POINTS:
        raise ValueError(
            f"brute_force_optimize: grid of {levels}^{n} points is too large to enumerate"
        )
    per_element = cs.est_g0[:, None] * cs.est_H0  # (N, N_b) reflected rows
    radix = levels ** np.arange(n - 1, -1, -1)
    total = levels**n
    best_obj = -1.0
    best_idx = 0
    chunk = 16384
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        digits = (idx[:, None] // radix) % levels  # first element varies slowest
        phases = np.exp(2j * math.pi * digits / levels)
        rows = phases @ per_element + cs.est_hd0
        obj = np.sum(np.abs(rows) ** 2, axis=1)  # MRT objective = ||row||^2
        k = int(np.argmax(obj))
        if obj[k] > best_obj:
            best_obj = float(obj[k])
            best_idx = int(idx[k])
    digits = (best_idx // radix) % levels
    theta = 2 * math.pi * digits / levels
    row = combined_channel(cs, theta)
    norm = float(np.linalg.norm(row))
    if norm == 0:
        raise DegenerateChannelError("brute_force_optimize: combined channel is zero")
    return theta, row.conj() / norm, best_obj


@dataclass(frozen=True)
class SnrInputs:
    """Everything the slot-t SNR depends on.

    reflector_angles has one entry per element; p_d_w and sigma_n_sq_w are
    transmit and noise power in watts.
    """

    solution: BeamformSolution
    cs: ChannelSet
    rho: float
    trace: OscillatorTrace
    reflector_angles: np.ndarray
    p_d_w: float
    sigma_n_sq_w: float

    def __post_init__(self) -> None:
        if not 0 <= self.rho <= 1:
            raise ValueError("SnrInputs: rho must be in [0, 1]")
        if not self.p_d_w > 0:
            raise ValueError("SnrInputs: p_d_w must be > 0")
        if not self.sigma_n_sq_w > 0:
            raise ValueError("SnrInputs: sigma_n_sq_w must be > 0")
        if self.reflector_angles.shape != self.cs.est_g0.shape:
            raise ValueError("SnrInputs: reflector_angles must have one entry per element")


def received_snr_full(
    inp: SnrInputs,
    rng: np.random.Generator | None = None,
    innovations: Innovations | None = None,
) -> float:
    """Slot-t SNR with every oscillator phase factor kept explicit.

    The actual CSI is evolved from the estimates (aging plus accumulated
    phase increments), the reflection pattern applies the optimized phases
    distorted by the per-element errors, and the fixed transmit vector w_star
    is used as designed on slot-0 estimates. Innovations are drawn once per
    call unless supplied explicitly for a matched comparison.
    """
    if innovations is None:
        if rng is None:
            raise ValueError("received_snr_full: need rng or explicit innovations")
        innovations = draw_innovations(rng, inp.cs.n_antennas, inp.cs.n_reflectors)
    h_dt, H_t, g_t = evolve_channels(inp.cs, inp.rho, inp.trace, innovations=innovations)
    pattern = np.exp(1j * (inp.solution.theta_star + inp.reflector_angles))
    amplitude = ((g_t * pattern) @ H_t + h_dt) @ inp.solution.w_star
    return inp.p_d_w / inp.sigma_n_sq_w * float(abs(amplitude) ** 2)


def received_snr_simplified(inp: SnrInputs, innovations: Innovations) -> float:
    """Slot-t SNR in the oscillator-free reduced form.

    Works entirely on the true slot-0 gains: the oscillator phases shared by
    every term are a common rotation of the received amplitude, so they drop
    out of |.|^2. The transmit vector is the zero-phase MRT beamformer, which
    is w_star stripped of its global estimation phase. Innovations must be
    the same draws fed to the full evaluator for an exact match.
    """
    theta = inp.solution.theta_star
    row0 = (inp.cs.v_g0 * np.exp(1j * theta)) @ inp.cs.V_H0 + inp.cs.v_d0
    norm = float(np.linalg.norm(row0))
    if norm == 0:
        raise DegenerateChannelError("received_snr_simplified: combined channel is zero")
    u = row0.conj() / norm
    s = math.sqrt(1 - inp.rho * inp.rho)
    g_part = inp.rho * inp.cs.v_g0 + s * inp.cs.reflect_scale * innovations.reflect
    d_part = inp.rho * inp.cs.v_d0 + s * inp.cs.direct_scale * innovations.direct
    pattern = np.exp(1j * (theta + inp.reflector_angles))
    amplitude = ((g_part * pattern) @ inp.cs.V_H0 + d_part) @ u
    return inp.p_d_w / inp.sigma_n_sq_w * float(abs(amplitude) ** 2)


def spectral_efficiency(gamma: float) -> float:
    """Instantaneous rate log2(1 + gamma) in bits/s/Hz."""
    if gamma < 0:
        raise ValueError("spectral_efficiency: gamma must be >= 0")
    return math.log1p(gamma) / math.log(2)


def frame_average_rate(rates: list[float], frame_slots: int) -> float:
    """Frame-averaged rate: sum of the T data-slot rates over T + 1 slots.

    The denominator counts the rate-free training slot.
    """
    if not rates:
        raise ValueError("frame_average_rate: rates must be nonempty")
    if len(rates) != frame_slots:
        raise ValueError(
            f"frame_average_rate: expected {frame_slots} rates, got {len(rates)}"
        )
    return sum(rates) / (frame_slots + 1)
