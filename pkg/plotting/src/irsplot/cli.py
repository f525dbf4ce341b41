"""Command line entry point: render one sweep CSV as one panel image."""

from __future__ import annotations

import argparse
import sys

from .panels import PANEL_IDS, PlotSpec, SchemaError, render_panel


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render a spectral-efficiency sweep CSV as a figure panel.",
    )
    parser.add_argument("--panel", required=True, choices=PANEL_IDS)
    parser.add_argument(
        "--in", dest="in_path", required=True, metavar="CSV", help="input sweep CSV"
    )
    parser.add_argument(
        "--out", required=True, metavar="IMAGE", help="output image (svg/png/pdf)"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(in_path=args.in_path, panel=args.panel, out_path=args.out)
    try:
        summary = render_panel(spec)
    except (SchemaError, OSError) as exc:
        print(f"plot: error: {exc}", file=sys.stderr)
        return 2
    if summary.series_count == 0:
        print(
            f"plot: warning: {args.in_path} has no data rows; rendered empty axes",
            file=sys.stderr,
        )
    else:
        print(
            f"wrote {summary.out_path}: {summary.series_count} series, "
            f"{summary.rows} points"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
