r"""Monte Carlo sweeps over UE position, persistence, and verification suites.

A sweep evaluates one scenario (a set of (rho, kappa, oscillator) curves over
the configured d grid). Every trial derives its own substreams from
(seed, (d index, trial)), so results are independent of execution order and
worker count, and all curves at a given d share channel realizations: curve
differences are paired rather than masked by independent sampling noise.

Per point the simulation runs `trials` frames: draw slot-0 CSI and its
estimates, optimize beamforming once, then step the data slots through aging,
oscillator increments, and reflector errors, recording the mean per-slot
spectral efficiency.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
from dataclasses import dataclass, replace

import numpy as np

from .beamforming import (
    SnrInputs,
    optimize,
    received_snr_full,
    received_snr_simplified,
    spectral_efficiency,
)
from .channels import ChannelSet, Geometry, draw_innovations, generate_channel_set
from .config import ScenarioConfig, dbm_to_watts
from .impairments import NOISELESS, OscillatorTrace, accumulate_phase_noise, sample_reflector_noise
from .numerics import spawn_streams

CSV_HEADER = "scenario,d_m,rho,kappa,oscillator,trials,mean_se_bpshz,std_se_bpshz"

SCENARIOS = ("fig2a", "fig2b", "fig2c", "fig2d", "custom")


@dataclass(frozen=True)
class ResultRecord:
    """One sweep point: scenario curve coordinates and SE statistics."""

    scenario: str
    d_m: float
    rho: float
    kappa: float
    oscillator: bool
    trials: int
    mean_se_bpshz: float
    std_se_bpshz: float


def run_point(
    cfg: ScenarioConfig,
    d: float,
    rho: float,
    kappa: float,
    oscillator_enabled: bool,
    point_key: int = 0,
    scenario: str = "custom",
) -> ResultRecord:
    """Monte Carlo SE estimate at one (d, rho, kappa, oscillator) point.

    point_key seeds the substream family; points that share it (same d
    across curves) see identical channel, reflector, and innovation draws.
    """
    if not 0 <= rho <= 1:
        raise ValueError("run_point: rho must be in [0, 1]")
    if math.isnan(kappa) or kappa < 0:
        raise ValueError("run_point: kappa must be >= 0 or inf")
    geom = Geometry(cfg.d_bs_irs_m, cfg.d_vertical_m, d)
    sigma_phi_sq = cfg.resolved_sigma_phi_sq if oscillator_enabled else 0.0
    sigma_psi_sq = cfg.resolved_sigma_psi_sq if oscillator_enabled else 0.0
    p_d_w = dbm_to_watts(cfg.power_dbm)
    sigma_n_sq_w = dbm_to_watts(cfg.noise_dbm)

    rates = np.empty(cfg.trials)
    for trial in range(cfg.trials):
        ch_rng, osc_rng, refl_rng, innov_rng = spawn_streams(cfg.seed, (point_key, trial), 4)
        if sigma_phi_sq > 0 or sigma_psi_sq > 0:
            phi0 = float(osc_rng.uniform(-math.pi, math.pi))
            psi0 = float(osc_rng.uniform(-math.pi, math.pi))
        else:
            phi0 = 0.0
            psi0 = 0.0
        cs = generate_channel_set(cfg, geom, phi0, psi0, ch_rng)
        solution = optimize(cs, cfg.iterations, cfg.snr_scale)
        trace = OscillatorTrace(phi0, psi0, sigma_phi_sq, sigma_psi_sq)
        se_sum = 0.0
        for t in range(1, cfg.frame_slots + 1):
            trace = accumulate_phase_noise(trace, t, osc_rng)
            angles = sample_reflector_noise(kappa, cfg.n_reflectors, refl_rng)
            innovations = draw_innovations(innov_rng, cfg.n_antennas, cfg.n_reflectors)
            inp = SnrInputs(solution, cs, rho, trace, angles, p_d_w, sigma_n_sq_w)
            se_sum += spectral_efficiency(received_snr_full(inp, innovations=innovations))
        rates[trial] = se_sum / cfg.frame_slots

    mean = float(rates.mean())
    std = float(rates.std(ddof=1)) if cfg.trials > 1 else 0.0
    return ResultRecord(scenario, d, rho, kappa, oscillator_enabled, cfg.trials, mean, std)


def scenario_curves(cfg: ScenarioConfig, scenario: str) -> list[tuple[float, float, bool]]:
    """The (rho, kappa, oscillator) curve grid of one scenario."""
    if scenario == "fig2a":
        return [(rho, NOISELESS, False) for rho in cfg.rho_list]
    if scenario == "fig2b":
        return [(1.0, kappa, False) for kappa in cfg.kappa_list]
    if scenario == "fig2c":
        return [
            (rho, kappa, osc)
            for rho in cfg.rho_list
            for kappa in cfg.kappa_list
            for osc in (False, True)
        ]
    if scenario == "fig2d":
        # No-direct-link panel: benchmark, a jointly impaired curve, and the
        # fully uncorrelated lower bound, each with oscillator noise off/on.
        return [
            (rho, kappa, osc)
            for rho, kappa in ((1.0, NOISELESS), (0.6, 1.0), (0.0, 0.0))
            for osc in (False, True)
        ]
    if scenario == "custom":
        return [
            (rho, kappa, cfg.oscillator) for rho in cfg.rho_list for kappa in cfg.kappa_list
        ]
    raise ValueError(f"scenario_curves: unknown scenario {scenario!r}")


def run_sweep(cfg: ScenarioConfig, scenario: str) -> list[ResultRecord]:
    """All records of one scenario, curve-major, d ascending within a curve."""
    if scenario not in SCENARIOS:
        raise ValueError(f"run_sweep: unknown scenario {scenario!r}")
    eff_cfg = replace(cfg, direct_link=False) if scenario == "fig2d" else cfg
    tasks = [
        (eff_cfg, d, rho, kappa, osc, d_index, scenario)
        for rho, kappa, osc in scenario_curves(eff_cfg, scenario)
        for d_index, d in enumerate(eff_cfg.d_sweep_m)
    ]
    if eff_cfg.workers > 1:
        with multiprocessing.Pool(eff_cfg.workers) as pool:
            return pool.starmap(run_point, tasks)
    return [run_point(*task) for task in tasks]


def _format_field(value: float) -> str:
    return format(value, ".6g")


def write_results(records: list[ResultRecord], path: str) -> None:
    """Write records as CSV: fixed header, 6 significant digits, UTF-8."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(CSV_HEADER + "\n")
        for r in records:
            fields = (
                r.scenario,
                _format_field(r.d_m),
                _format_field(r.rho),
                _format_field(r.kappa),
                "1" if r.oscillator else "0",
                str(r.trials),
                _format_field(r.mean_se_bpshz),
                _format_field(r.std_se_bpshz),
            )
            handle.write(",".join(fields) + "\n")


def read_results(path: str) -> list[ResultRecord]:
    """Parse a write_results CSV back into records."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {CSV_HEADER!r}") from None
        if header != CSV_HEADER.split(","):
            raise ValueError(f"{path}: bad header {','.join(header)!r}")
        records = []
        for row in reader:
            if len(row) != 8:
                raise ValueError(f"{path}: row {reader.line_num}: expected 8 fields, got {len(row)}")
            if row[4] not in ("0", "1"):
                raise ValueError(f"{path}: row {reader.line_num}: oscillator must be 0 or 1")
            records.append(
                ResultRecord(
                    scenario=row[0],
                    d_m=float(row[1]),
                    rho=float(row[2]),
                    kappa=float(row[3]),
                    oscillator=row[4] == "1",
                    trials=int(row[5]),
                    mean_se_bpshz=float(row[6]),
                    std_se_bpshz=float(row[7]),
                )
            )
    return records


@dataclass(frozen=True)
class VerificationReport:
    """Worst-case relative errors from the SNR identity suites."""

    instances: int
    max_phase_error: float
    max_equivalence_error: float
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        return (
            self.max_phase_error <= self.tolerance
            and self.max_equivalence_error <= self.tolerance
        )


def _zero_phase_channel_set(cs: ChannelSet) -> ChannelSet:
    """The same realization as if training had seen zero oscillator phases."""
    return ChannelSet(
        v_d0=cs.v_d0,
        V_H0=cs.V_H0,
        v_g0=cs.v_g0,
        est_hd0=cs.v_d0,
        est_H0=cs.V_H0,
        est_g0=cs.v_g0,
        direct_scale=cs.direct_scale,
        reflect_scale=cs.reflect_scale,
    )


def run_verification(instances: int = 1000, seed: int = 2024) -> VerificationReport:
    """Check SNR phase invariance and full/simplified agreement numerically.

    Random small instances cycle through every combination of
    rho in {0, 0.3, 0.6, 0.9, 1}, kappa in {0, 1, 10, +inf}, and direct link
    on/off. For each one, the full evaluator under an arbitrary oscillator
    trace is compared against (a) the full evaluator with every phase forced
    to zero and (b) the simplified evaluator, all on shared innovation draws.
    """
    if instances < 1:
        raise ValueError("run_verification: instances must be >= 1")
    combos = [
        (rho, kappa, direct)
        for rho in (0.0, 0.3, 0.6, 0.9, 1.0)
        for kappa in (0.0, 1.0, 10.0, math.inf)
        for direct in (True, False)
    ]
    max_phase = 0.0
    max_equiv = 0.0
    for i in range(instances):
        rho, kappa, direct = combos[i % len(combos)]
        ch_rng, osc_rng, refl_rng, innov_rng = spawn_streams(seed, (i,), 4)
        cfg = ScenarioConfig(
            n_reflectors=int(ch_rng.integers(2, 9)),
            n_antennas=int(ch_rng.integers(1, 5)),
            direct_link=direct,
            trials=1,
            bs_irs_rician_k=float(ch_rng.choice([0.0, 3.0, math.inf])),
            bs_irs_aod_deg=float(ch_rng.uniform(-75, 75)),
            bs_irs_aoa_deg=float(ch_rng.uniform(-75, 75)),
        )
        geom = Geometry(cfg.d_bs_irs_m, cfg.d_vertical_m, float(ch_rng.uniform(5, 60)))
        phi0 = float(osc_rng.uniform(-math.pi, math.pi))
        psi0 = float(osc_rng.uniform(-math.pi, math.pi))
        sigma_phi_sq = float(osc_rng.uniform(1e-4, 0.05))
        sigma_psi_sq = float(osc_rng.uniform(1e-4, 0.05))

        cs = generate_channel_set(cfg, geom, phi0, psi0, ch_rng)
        solution = optimize(cs, cfg.iterations, cfg.snr_scale)
        trace = OscillatorTrace(phi0, psi0, sigma_phi_sq, sigma_psi_sq)
        for t in range(1, 4):
            trace = accumulate_phase_noise(trace, t, osc_rng)
        angles = sample_reflector_noise(kappa, cfg.n_reflectors, refl_rng)
        innovations = draw_innovations(innov_rng, cfg.n_antennas, cfg.n_reflectors)
        p_d_w = dbm_to_watts(cfg.power_dbm)
        sigma_n_sq_w = dbm_to_watts(cfg.noise_dbm)

        inp = SnrInputs(solution, cs, rho, trace, angles, p_d_w, sigma_n_sq_w)
        gamma_full = received_snr_full(inp, innovations=innovations)

        cs_zero = _zero_phase_channel_set(cs)
        solution_zero = optimize(cs_zero, cfg.iterations, cfg.snr_scale)
        zero_trace = OscillatorTrace(0.0, 0.0, 0.0, 0.0, t=trace.t)
        inp_zero = SnrInputs(solution_zero, cs_zero, rho, zero_trace, angles, p_d_w, sigma_n_sq_w)
        gamma_zero = received_snr_full(inp_zero, innovations=innovations)

        gamma_simplified = received_snr_simplified(inp, innovations)

        scale = max(abs(gamma_full), 1e-300)
        max_phase = max(max_phase, abs(gamma_full - gamma_zero) / scale)
        max_equiv = max(max_equiv, abs(gamma_full - gamma_simplified) / scale)
    return VerificationReport(instances, max_phase, max_equiv)
