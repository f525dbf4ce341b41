"""Shared helpers for building small test instances."""

from __future__ import annotations

import math

import numpy as np

from irslink import ChannelSet, Geometry, ScenarioConfig, generate_channel_set


def small_config(n: int = 4, n_b: int = 2, direct: bool = True, **overrides) -> ScenarioConfig:
    return ScenarioConfig(n_reflectors=n, n_antennas=n_b, direct_link=direct, trials=1, **overrides)


def small_channel_set(
    rng: np.random.Generator,
    n: int = 4,
    n_b: int = 2,
    direct: bool = True,
    phi0: float = 0.0,
    psi0: float = 0.0,
    d: float = 30.0,
    **overrides,
) -> ChannelSet:
    cfg = small_config(n, n_b, direct, **overrides)
    geom = Geometry(cfg.d_bs_irs_m, cfg.d_vertical_m, d)
    return generate_channel_set(cfg, geom, phi0, psi0, rng)


def manual_channel_set(
    v_d0: np.ndarray,
    V_H0: np.ndarray,
    v_g0: np.ndarray,
    phi0: float = 0.0,
    psi0: float = 0.0,
    direct_scale: float = 1.0,
    reflect_scale: float = 1.0,
) -> ChannelSet:
    """ChannelSet from explicit gains, estimates derived from the phases."""
    v_d0 = np.asarray(v_d0, dtype=complex)
    V_H0 = np.asarray(V_H0, dtype=complex)
    v_g0 = np.asarray(v_g0, dtype=complex)
    return ChannelSet(
        v_d0=v_d0,
        V_H0=V_H0,
        v_g0=v_g0,
        est_hd0=np.exp(1j * (phi0 + psi0)) * v_d0,
        est_H0=np.exp(1j * phi0) * V_H0,
        est_g0=np.exp(1j * psi0) * v_g0,
        direct_scale=direct_scale,
        reflect_scale=reflect_scale,
    )


def circular_mean(angles: np.ndarray) -> float:
    return math.atan2(np.sin(angles).mean(), np.cos(angles).mean())
