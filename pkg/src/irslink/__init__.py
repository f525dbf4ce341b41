"""Link-level simulator for an IRS-aided MISO downlink with hardware impairments.

Quantifies the spectral-efficiency cost of channel aging, free-running
oscillator phase noise, and per-reflector phase errors, including the
invariance of the received SNR to oscillator phases under MRT beamforming.
"""

from .beamforming import (
    BeamformSolution,
    DegenerateChannelError,
    SnrInputs,
    brute_force_optimize,
    frame_average_rate,
    mrt_weights,
    optimize,
    passive_phase_update,
    received_snr_full,
    received_snr_simplified,
    spectral_efficiency,
)
from .channels import (
    ChannelSet,
    Geometry,
    Innovations,
    LinkStatistics,
    draw_innovations,
    evolve_channels,
    generate_channel_set,
    geometry_distances,
    path_loss_linear,
    sample_rician,
    ula_steering,
)
from .config import ConfigError, ScenarioConfig, dbm_to_watts, format_config, load_config
from .experiment import (
    CSV_HEADER,
    SCENARIOS,
    ResultRecord,
    VerificationReport,
    read_results,
    run_point,
    run_sweep,
    run_verification,
    scenario_curves,
    write_results,
)
from .impairments import (
    NOISELESS,
    SPEED_OF_LIGHT,
    OscillatorTrace,
    accumulate_phase_noise,
    age_gain,
    correlation_coefficient,
    max_doppler,
    oscillator_variance,
    sample_reflector_noise,
)
from .numerics import (
    bessel_i0,
    bessel_j0,
    make_rng,
    sample_complex_normal,
    sample_gaussian,
    sample_von_mises,
    spawn_streams,
    von_mises_pdf,
)

__version__ = "0.1.0"
