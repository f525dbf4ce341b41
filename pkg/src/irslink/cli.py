"""Command line entry point: scenario sweeps, identity checks, defaults listing."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import ConfigError, ScenarioConfig, format_config, load_config
from .experiment import SCENARIOS, run_sweep, run_verification, write_results


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sim",
        description="Monte Carlo link simulation of an IRS-aided MISO downlink "
        "under channel aging, oscillator phase noise, and reflector phase errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run a scenario sweep and write a CSV")
    run_parser.add_argument("--scenario", required=True, choices=SCENARIOS)
    run_parser.add_argument("--config", help="key=value config file; defaults apply if omitted")
    run_parser.add_argument("--out", required=True, help="output CSV path")
    run_parser.add_argument("--seed", type=int, help="override the config seed")
    run_parser.add_argument("--trials", type=int, help="override the config trial count")
    run_parser.add_argument("--workers", type=int, help="override the config worker count")

    verify_parser = sub.add_parser(
        "verify", help="check the SNR phase-invariance and full/simplified identities"
    )
    verify_parser.add_argument("--instances", type=int, default=1000)
    verify_parser.add_argument("--seed", type=int, default=2024)

    sub.add_parser("defaults", help="print the resolved default configuration")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "defaults":
        print(format_config(ScenarioConfig()), end="")
        return 0

    if args.command == "verify":
        report = run_verification(args.instances, args.seed)
        print(
            f"phase invariance: max relative error {report.max_phase_error:.3e} "
            f"over {report.instances} instances (tolerance {report.tolerance:g})"
        )
        print(
            f"full/simplified agreement: max relative error {report.max_equivalence_error:.3e} "
            f"over {report.instances} instances (tolerance {report.tolerance:g})"
        )
        print("PASS" if report.passed else "FAIL")
        return 0 if report.passed else 1

    try:
        cfg = load_config(args.config) if args.config else ScenarioConfig()
        overrides = {
            name: getattr(args, name)
            for name in ("seed", "trials", "workers")
            if getattr(args, name) is not None
        }
        if overrides:
            cfg = replace(cfg, **overrides)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    records = run_sweep(cfg, args.scenario)
    write_results(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
