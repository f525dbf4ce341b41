"""Scenario configuration: defaults, file parsing, and validation.

Config files are flat `key = value` text. `#` starts a comment, blank lines
are ignored, unknown keys are rejected, and every key missing from the file
keeps its default. `format_config` emits the same syntax, so a round trip
through text is lossless; `sim defaults` prints exactly that listing.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .channels import Geometry, LinkStatistics, geometry_distances
from .impairments import oscillator_variance


class ConfigError(ValueError):
    """Invalid configuration value or file syntax; message names the field."""


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) * 1e-3


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete simulation parameter set; defaults reproduce the reference setup."""

    n_reflectors: int = 200
    n_antennas: int = 16
    power_dbm: float = 5.0
    noise_dbm: float = -80.0
    ref_loss_db: float = -30.0
    d_bs_irs_m: float = 51.0
    d_vertical_m: float = 2.0
    d_sweep_m: tuple[float, ...] = (20.0, 24.0, 28.0, 32.0, 36.0, 40.0, 44.0, 47.0, 49.0, 51.0)
    rho_list: tuple[float, ...] = (1.0, 0.9, 0.6, 0.3, 0.0)
    kappa_list: tuple[float, ...] = (math.inf, 4.0, 1.0, 0.0)
    direct_rician_k: float = 0.0
    direct_pathloss_exp: float = 3.0
    direct_shadowing_db: float = 10.0
    bs_irs_rician_k: float = math.inf
    bs_irs_pathloss_exp: float = 2.0
    bs_irs_shadowing_db: float = 0.0
    irs_ue_rician_k: float = 0.0
    irs_ue_pathloss_exp: float = 3.0
    irs_ue_shadowing_db: float = 10.0
    bs_irs_aod_deg: float = 30.0
    bs_irs_aoa_deg: float = 60.0
    direct_los_deg: float = 0.0
    irs_ue_los_deg: float = 0.0
    carrier_hz: float = 3.0e9
    slot_duration_s: float = 1.0e-3
    osc_const_bs: float = 1.0e-18
    osc_const_ue: float = 1.0e-18
    sigma_phi_sq: float | None = None
    sigma_psi_sq: float | None = None
    frame_slots: int = 1
    trials: int = 1000
    iterations: int = 3
    seed: int = 1
    direct_link: bool = True
    oscillator: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        for name in ("n_reflectors", "n_antennas", "frame_slots", "trials", "iterations", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name}: must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed: must fit an unsigned 64-bit integer")
        for name in ("power_dbm", "noise_dbm", "ref_loss_db"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name}: must be finite")
        if not (math.isfinite(self.carrier_hz) and self.carrier_hz > 0):
            raise ConfigError("carrier_hz: must be finite and > 0")
        if not (math.isfinite(self.slot_duration_s) and self.slot_duration_s > 0):
            raise ConfigError("slot_duration_s: must be finite and > 0")
        for name in ("osc_const_bs", "osc_const_ue"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name}: must be >= 0")
        for name in ("sigma_phi_sq", "sigma_psi_sq"):
            value = getattr(self, name)
            if value is not None and not (math.isfinite(value) and value >= 0):
                raise ConfigError(f"{name}: must be finite and >= 0")
        if not (math.isfinite(self.d_bs_irs_m) and self.d_bs_irs_m > 0):
            raise ConfigError("d_bs_irs_m: must be finite and > 0")
        if not (math.isfinite(self.d_vertical_m) and self.d_vertical_m > 0):
            raise ConfigError("d_vertical_m: must be finite and > 0")
        if not self.d_sweep_m:
            raise ConfigError("d_sweep_m: must be nonempty")
        for d in self.d_sweep_m:
            try:
                distances = geometry_distances(Geometry(self.d_bs_irs_m, self.d_vertical_m, d))
            except ValueError as exc:
                raise ConfigError(f"d_sweep_m: entry {d!r}: {exc}") from exc
            if min(distances) < 1:
                raise ConfigError(
                    f"d_sweep_m: entry {d!r} puts a link distance below the 1 m path-loss bound"
                )
        if not self.rho_list:
            raise ConfigError("rho_list: must be nonempty")
        for rho in self.rho_list:
            if not 0 <= rho <= 1:
                raise ConfigError(f"rho_list: entry {rho!r} outside [0, 1]")
        if not self.kappa_list:
            raise ConfigError("kappa_list: must be nonempty")
        for kappa in self.kappa_list:
            if math.isnan(kappa) or kappa < 0:
                raise ConfigError(f"kappa_list: entry {kappa!r} must be >= 0 or inf")
        for name in ("direct", "bs_irs", "irs_ue"):
            try:
                getattr(self, f"{name}_stats")
            except ValueError as exc:
                raise ConfigError(f"{name} link statistics: {exc}") from exc
        for name in ("bs_irs_aod_deg", "bs_irs_aoa_deg", "direct_los_deg", "irs_ue_los_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name}: must be finite")

    @property
    def direct_stats(self) -> LinkStatistics:
        return LinkStatistics(
            self.direct_rician_k, self.direct_pathloss_exp, self.direct_shadowing_db, self.ref_loss_db
        )

    @property
    def bs_irs_stats(self) -> LinkStatistics:
        return LinkStatistics(
            self.bs_irs_rician_k, self.bs_irs_pathloss_exp, self.bs_irs_shadowing_db, self.ref_loss_db
        )

    @property
    def irs_ue_stats(self) -> LinkStatistics:
        return LinkStatistics(
            self.irs_ue_rician_k, self.irs_ue_pathloss_exp, self.irs_ue_shadowing_db, self.ref_loss_db
        )

    @property
    def snr_scale(self) -> float:
        """Transmit power over noise power, linear."""
        return dbm_to_watts(self.power_dbm) / dbm_to_watts(self.noise_dbm)

    @property
    def resolved_sigma_phi_sq(self) -> float:
        if self.sigma_phi_sq is not None:
            return self.sigma_phi_sq
        return oscillator_variance(self.carrier_hz, self.osc_const_bs, self.slot_duration_s)

    @property
    def resolved_sigma_psi_sq(self) -> float:
        if self.sigma_psi_sq is not None:
            return self.sigma_psi_sq
        return oscillator_variance(self.carrier_hz, self.osc_const_ue, self.slot_duration_s)


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_float(text: str) -> float:
    value = float(text)
    if math.isnan(value):
        raise ValueError("nan is not allowed")
    return value


def _parse_float_list(text: str) -> tuple[float, ...]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    return tuple(_parse_float(item) for item in items)


def _parse_optional_float(text: str) -> float | None:
    if text.lower() in ("none", ""):
        return None
    return _parse_float(text)


_CONVERTERS = {}
for _field in dataclasses.fields(ScenarioConfig):
    if _field.type == "int":
        _CONVERTERS[_field.name] = int
    elif _field.type == "float":
        _CONVERTERS[_field.name] = _parse_float
    elif _field.type == "bool":
        _CONVERTERS[_field.name] = _parse_bool
    elif _field.type == "tuple[float, ...]":
        _CONVERTERS[_field.name] = _parse_float_list
    elif _field.type == "float | None":
        _CONVERTERS[_field.name] = _parse_optional_float
    else:  # pragma: no cover - catches future field additions
        raise TypeError(f"no converter for config field {_field.name}: {_field.type}")


def load_config(path: str) -> ScenarioConfig:
    """Parse a key=value config file; missing keys keep their defaults."""
    overrides: dict[str, object] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not sep or not key:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            if key not in _CONVERTERS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                overrides[key] = _CONVERTERS[key](value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: invalid value for {key}: {value!r} ({exc})") from exc
    try:
        return ScenarioConfig(**overrides)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ", ".join(_format_value(v) for v in value)
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(cfg: ScenarioConfig) -> str:
    """Render a config as parseable key=value text, one key per line."""
    lines = [
        "# Simulation configuration: flat 'key = value' lines, '#' comments.",
        "# Lists are comma-separated; 'inf' and 'none' are accepted where noted.",
    ]
    for field in dataclasses.fields(ScenarioConfig):
        lines.append(f"{field.name} = {_format_value(getattr(cfg, field.name))}")
    return "\n".join(lines) + "\n"
