"""Config defaults, file parsing, validation, and round-trip checks."""

import math

import pytest

from irslink import ConfigError, ScenarioConfig, dbm_to_watts, format_config, load_config


def write(tmp_path, text):
    path = tmp_path / "scenario.cfg"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestDefaults:
    def test_reference_setup(self):
        cfg = ScenarioConfig()
        assert cfg.n_reflectors == 200
        assert cfg.n_antennas == 16
        assert cfg.ref_loss_db == -30.0
        assert cfg.power_dbm == 5.0
        assert cfg.noise_dbm == -80.0
        assert cfg.d_bs_irs_m == 51.0
        assert cfg.d_vertical_m == 2.0
        assert cfg.frame_slots == 1
        assert cfg.iterations == 3
        assert cfg.rho_list == (1.0, 0.9, 0.6, 0.3, 0.0)
        assert cfg.kappa_list == (math.inf, 4.0, 1.0, 0.0)
        assert cfg.direct_link is True

    def test_link_statistics(self):
        cfg = ScenarioConfig()
        assert cfg.direct_stats.pathloss_exp == 3.0
        assert cfg.direct_stats.shadowing_db == 10.0
        assert cfg.bs_irs_stats.rician_k == math.inf
        assert cfg.bs_irs_stats.pathloss_exp == 2.0
        assert cfg.bs_irs_stats.shadowing_db == 0.0
        assert cfg.irs_ue_stats.pathloss_exp == 3.0

    def test_snr_scale(self):
        assert ScenarioConfig().snr_scale == pytest.approx(10**8.5, rel=1e-12)

    def test_resolved_oscillator_variance(self):
        # oracle: 4 pi^2 * 3e9 * 1e-18 * 1e-3 at 60 digits
        cfg = ScenarioConfig()
        assert cfg.resolved_sigma_phi_sq == pytest.approx(1.184352528130723e-10, abs=1e-15)
        override = ScenarioConfig(sigma_phi_sq=0.5)
        assert override.resolved_sigma_phi_sq == 0.5
        assert override.resolved_sigma_psi_sq == pytest.approx(1.184352528130723e-10, abs=1e-15)


class TestDbmConversion:
    def test_reference_points(self):
        assert dbm_to_watts(0.0) == pytest.approx(1e-3, rel=1e-12)
        assert dbm_to_watts(30.0) == pytest.approx(1.0, rel=1e-12)
        assert dbm_to_watts(-80.0) == pytest.approx(1e-11, rel=1e-12)


class TestLoadConfig:
    def test_empty_file_gives_defaults(self, tmp_path):
        assert load_config(write(tmp_path, "")) == ScenarioConfig()

    def test_comments_and_blank_lines_ignored(self, tmp_path):
        text = "# a comment\n\nn_antennas = 4  # trailing comment\n"
        assert load_config(write(tmp_path, text)).n_antennas == 4

    def test_partial_override_keeps_other_defaults(self, tmp_path):
        cfg = load_config(write(tmp_path, "n_antennas = 4\n"))
        assert cfg.n_antennas == 4
        assert cfg.n_reflectors == 200
        assert cfg.seed == 1

    def test_lists_and_inf(self, tmp_path):
        text = "kappa_list = inf, 2.5, 0\nd_sweep_m = 20, 35.5, 51\n"
        cfg = load_config(write(tmp_path, text))
        assert cfg.kappa_list == (math.inf, 2.5, 0.0)
        assert cfg.d_sweep_m == (20.0, 35.5, 51.0)

    def test_bool_parsing(self, tmp_path):
        assert load_config(write(tmp_path, "oscillator = true\n")).oscillator is True
        assert load_config(write(tmp_path, "direct_link = false\n")).direct_link is False

    def test_unknown_key_named(self, tmp_path):
        with pytest.raises(ConfigError, match="reflector_count"):
            load_config(write(tmp_path, "reflector_count = 100\n"))

    def test_invalid_value_names_field(self, tmp_path):
        with pytest.raises(ConfigError, match="trials"):
            load_config(write(tmp_path, "trials = many\n"))

    def test_syntax_error_reports_line(self, tmp_path):
        with pytest.raises(ConfigError, match=":1:"):
            load_config(write(tmp_path, "just some words\n"))

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_config(str(tmp_path / "absent.cfg"))


class TestValidation:
    def test_trials_must_be_positive(self):
        with pytest.raises(ConfigError, match="trials"):
            ScenarioConfig(trials=0)

    def test_rho_range(self):
        with pytest.raises(ConfigError, match="rho_list"):
            ScenarioConfig(rho_list=(0.5, 1.2))

    def test_kappa_range(self):
        with pytest.raises(ConfigError, match="kappa_list"):
            ScenarioConfig(kappa_list=(-1.0,))

    def test_empty_sweep_rejected(self):
        with pytest.raises(ConfigError, match="d_sweep_m"):
            ScenarioConfig(d_sweep_m=())

    def test_sweep_outside_path_loss_domain_rejected(self):
        # d placing the UE within 1 m of the BS breaks the far-field model
        with pytest.raises(ConfigError, match="d_sweep_m"):
            ScenarioConfig(d_vertical_m=0.1, d_sweep_m=(0.0,))

    def test_negative_sweep_rejected(self):
        with pytest.raises(ConfigError, match="d_sweep_m"):
            ScenarioConfig(d_sweep_m=(-5.0,))

    def test_seed_is_u64(self):
        with pytest.raises(ConfigError, match="seed"):
            ScenarioConfig(seed=-1)
        with pytest.raises(ConfigError, match="seed"):
            ScenarioConfig(seed=2**64)
        assert ScenarioConfig(seed=2**64 - 1).seed == 2**64 - 1

    def test_sigma_override_must_be_nonnegative(self):
        with pytest.raises(ConfigError, match="sigma_phi_sq"):
            ScenarioConfig(sigma_phi_sq=-1.0)

    def test_carrier_and_slot_positive(self):
        with pytest.raises(ConfigError, match="carrier_hz"):
            ScenarioConfig(carrier_hz=0.0)
        with pytest.raises(ConfigError, match="slot_duration_s"):
            ScenarioConfig(slot_duration_s=-1e-3)


class TestFormatConfig:
    def test_round_trip_default(self, tmp_path):
        cfg = ScenarioConfig()
        assert load_config(write(tmp_path, format_config(cfg))) == cfg

    def test_round_trip_modified(self, tmp_path):
        cfg = ScenarioConfig(
            n_antennas=4,
            kappa_list=(math.inf, 0.25),
            d_sweep_m=(20.0, 51.0),
            sigma_phi_sq=1e-9,
            oscillator=True,
            seed=987654321,
        )
        assert load_config(write(tmp_path, format_config(cfg))) == cfg

    def test_every_key_listed(self):
        import dataclasses

        text = format_config(ScenarioConfig())
        for field in dataclasses.fields(ScenarioConfig):
            assert f"\n{field.name} = " in text
