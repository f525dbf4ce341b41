r"""Scenario geometry, fading statistics, and CSI generation/evolution.

The BS sits at the origin, the IRS at horizontal distance d_bi, both linked
to a UE at horizontal offset d from the BS and vertical offset d_v. Small-
scale fading is Rician per link; the BS-IRS link is rank-one LOS (K = +inf).
Training yields estimated CSI that carries the slot-0 oscillator phases:

    est_hd0 = e^{j(phi0+psi0)} v_d0,  est_H0 = e^{j phi0} V_H0,
    est_g0  = e^{j psi0} v_g0.

Later slots rotate the estimates by the accumulated oscillator increments and
mix in fresh fading through the Gauss-Markov aging model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .impairments import OscillatorTrace
from .numerics import sample_complex_normal

if TYPE_CHECKING:
    from .config import ScenarioConfig


@dataclass(frozen=True)
class Geometry:
    """Horizontal BS-IRS distance, vertical UE offset, horizontal BS-UE distance (m)."""

    d_bi: float
    d_v: float
    d: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.d_bi) and self.d_bi > 0):
            raise ValueError("Geometry: d_bi must be finite and > 0")
        if not (math.isfinite(self.d_v) and self.d_v > 0):
            raise ValueError("Geometry: d_v must be finite and > 0")
        if not (math.isfinite(self.d) and self.d >= 0):
            raise ValueError("Geometry: d must be finite and >= 0")


def geometry_distances(geom: Geometry) -> tuple[float, float]:
    """(BS-UE, IRS-UE) slant distances: sqrt(d^2 + d_v^2), sqrt((d_bi-d)^2 + d_v^2)."""
    d_bu = math.hypot(geom.d, geom.d_v)
    d_iu = math.hypot(geom.d_bi - geom.d, geom.d_v)
    return d_bu, d_iu


@dataclass(frozen=True)
class LinkStatistics:
    """Large/small-scale fading parameters of one link.

    rician_k may be +inf (pure LOS). Shadowing is a fixed dB penalty, not a
    lognormal draw.
    """

    rician_k: float
    pathloss_exp: float
    shadowing_db: float
    ref_loss_db: float

    def __post_init__(self) -> None:
        if self.rician_k < 0 or math.isnan(self.rician_k):
            raise ValueError("LinkStatistics: rician_k must be >= 0 (or +inf)")
        if not (math.isfinite(self.pathloss_exp) and self.pathloss_exp > 0):
            raise ValueError("LinkStatistics: pathloss_exp must be finite and > 0")
        if not math.isfinite(self.shadowing_db):
            raise ValueError("LinkStatistics: shadowing_db must be finite")
        if not math.isfinite(self.ref_loss_db):
            raise ValueError("LinkStatistics: ref_loss_db must be finite")


def path_loss_linear(distance_m: float, stats: LinkStatistics) -> float:
    """Linear power gain 10^{(L0 - 10 alpha log10 d - shadowing) / 10}.

    The reference loss L0 applies at d = 1 m; shorter distances are outside
    the far-field model.
    """
    if distance_m < 1:
        raise ValueError("path_loss_linear: distance must be >= 1 m")
    db = stats.ref_loss_db - 10 * stats.pathloss_exp * math.log10(distance_m) - stats.shadowing_db
    return 10.0 ** (db / 10.0)


def ula_steering(n: int, angle_rad: float) -> np.ndarray:
    """Unit-modulus ULA steering vector, half-wavelength spacing, length n."""
    if n < 1:
        raise ValueError("ula_steering: n must be >= 1")
    return np.exp(1j * math.pi * np.arange(n) * math.sin(angle_rad))


def sample_rician(k: float, los: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Unit-power Rician fading around a unit-modulus LOS component.

    sqrt(K/(K+1)) los + sqrt(1/(K+1)) CN(0, 1); K = +inf returns the LOS
    exactly without consuming the generator.
    """
    if k < 0 or math.isnan(k):
        raise ValueError("sample_rician: K must be >= 0 (or +inf)")
    los = np.asarray(los, dtype=complex)
    if not np.allclose(np.abs(los), 1.0, rtol=0, atol=1e-9):
        raise ValueError("sample_rician: LOS entries must be unit modulus")
    if math.isinf(k):
        return los.copy()
    nlos = sample_complex_normal(rng, los.shape)
    return math.sqrt(k / (k + 1)) * los + math.sqrt(1 / (k + 1)) * nlos


@dataclass(frozen=True)
class ChannelSet:
    """Slot-0 true gains, their phase-contaminated estimates, and aging scales.

    v_d0 (N_b,) is the direct BS-UE row, V_H0 (N, N_b) the BS-IRS matrix,
    v_g0 (N,) the IRS-UE gains. direct_scale/reflect_scale carry the per-link
    path-loss amplitudes so aging innovations enter at channel power.
    """

    v_d0: np.ndarray
    V_H0: np.ndarray
    v_g0: np.ndarray
    est_hd0: np.ndarray
    est_H0: np.ndarray
    est_g0: np.ndarray
    direct_scale: float
    reflect_scale: float

    @property
    def n_antennas(self) -> int:
        return self.v_d0.size

    @property
    def n_reflectors(self) -> int:
        return self.v_g0.size


def generate_channel_set(
    cfg: "ScenarioConfig",
    geom: Geometry,
    phi0: float,
    psi0: float,
    rng: np.random.Generator,
) -> ChannelSet:
    """Draw one slot-0 realization and its training estimates.

    Training is assumed noise-free apart from the oscillator phases, so the
    estimates equal the true gains rotated by e^{j phi0} (BS), e^{j psi0}
    (UE), or both (direct link). With direct_link disabled the direct row is
    exactly zero and its aging innovations are suppressed via direct_scale=0.
    """
    d_bu, d_iu = geometry_distances(geom)
    amp_h = math.sqrt(path_loss_linear(geom.d_bi, cfg.bs_irs_stats))
    amp_g = math.sqrt(path_loss_linear(d_iu, cfg.irs_ue_stats))

    if cfg.direct_link:
        amp_d = math.sqrt(path_loss_linear(d_bu, cfg.direct_stats))
        los_d = ula_steering(cfg.n_antennas, math.radians(cfg.direct_los_deg))
        v_d0 = amp_d * sample_rician(cfg.direct_rician_k, los_d, rng)
    else:
        amp_d = 0.0
        v_d0 = np.zeros(cfg.n_antennas, dtype=complex)

    los_h = np.outer(
        ula_steering(cfg.n_reflectors, math.radians(cfg.bs_irs_aoa_deg)),
        ula_steering(cfg.n_antennas, math.radians(cfg.bs_irs_aod_deg)),
    )
    V_H0 = amp_h * sample_rician(cfg.bs_irs_rician_k, los_h, rng)

    los_g = ula_steering(cfg.n_reflectors, math.radians(cfg.irs_ue_los_deg))
    v_g0 = amp_g * sample_rician(cfg.irs_ue_rician_k, los_g, rng)

    return ChannelSet(
        v_d0=v_d0,
        V_H0=V_H0,
        v_g0=v_g0,
        est_hd0=np.exp(1j * (phi0 + psi0)) * v_d0,
        est_H0=np.exp(1j * phi0) * V_H0,
        est_g0=np.exp(1j * psi0) * v_g0,
        direct_scale=amp_d,
        reflect_scale=amp_g,
    )


@dataclass(frozen=True)
class Innovations:
    """Fresh fading entering through aging: direct (N_b,) and IRS-UE (N,) rows."""

    direct: np.ndarray
    reflect: np.ndarray


def draw_innovations(rng: np.random.Generator, n_antennas: int, n_reflectors: int) -> Innovations:
    """One slot's CN(0, 1) innovation draws, direct row first."""
    return Innovations(
        direct=sample_complex_normal(rng, n_antennas),
        reflect=sample_complex_normal(rng, n_reflectors),
    )


def evolve_channels(
    cs: ChannelSet,
    rho: float,
    trace: OscillatorTrace,
    rng: np.random.Generator | None = None,
    innovations: Innovations | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Actual slot-t CSI (h_dt, H_t, g_t) as seen against the estimates.

    Each retained component is the estimate rotated by the accumulated
    oscillator increments; fresh fading enters with weight sqrt(1 - rho^2) at
    link power and carries the full phase history:

        h_dt = [rho est_hd0 + s a_d eps_d e^{j(phi0+psi0)}] e^{j(dphi+dpsi)}
        H_t  = est_H0 e^{j dphi}            (quasi-static link, no aging)
        g_t  = [rho est_g0 + s a_g eps_g e^{j psi0}] e^{j dpsi}

    with s = sqrt(1 - rho^2). Explicit innovations allow evaluating matched
    scenarios under shared draws; otherwise they come from rng.
    """
    if not 0 <= rho <= 1:
        raise ValueError("evolve_channels: rho must be in [0, 1]")
    if innovations is None:
        if rng is None:
            raise ValueError("evolve_channels: need rng or explicit innovations")
        innovations = draw_innovations(rng, cs.n_antennas, cs.n_reflectors)
    if innovations.direct.shape != cs.est_hd0.shape:
        raise ValueError("evolve_channels: direct innovation shape mismatch")
    if innovations.reflect.shape != cs.est_g0.shape:
        raise ValueError("evolve_channels: reflect innovation shape mismatch")

    s = math.sqrt(1 - rho * rho)
    rot_bs = np.exp(1j * trace.delta_phi)
    rot_ue = np.exp(1j * trace.delta_psi)

    h_dt = (
        rho * cs.est_hd0
        + s * cs.direct_scale * innovations.direct * np.exp(1j * (trace.phi0 + trace.psi0))
    ) * (rot_bs * rot_ue)
    H_t = cs.est_H0 * rot_bs
    g_t = (rho * cs.est_g0 + s * cs.reflect_scale * innovations.reflect * np.exp(1j * trace.psi0)) * rot_ue
    return h_dt, H_t, g_t
