"""Render spectral-efficiency sweep CSVs as figure panels.

Read-only consumer of the simulator's CSV output: one line per
(rho, kappa, oscillator) series, spectral efficiency against BS-UE
distance. Rendering is a pure function of the CSV bytes and the
PlotSpec, so regenerating a panel from identical input yields identical
image bytes (pinned style, salted SVG ids, no timestamp metadata).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CSV_COLUMNS = (
    "scenario",
    "d_m",
    "rho",
    "kappa",
    "oscillator",
    "trials",
    "mean_se_bpshz",
    "std_se_bpshz",
)

PANEL_IDS = ("a", "b", "c", "d")

# Everything that affects drawing is pinned here; the ambient matplotlibrc
# must not leak into the output bytes.
PANEL_STYLE = {
    "figure.figsize": (6.4, 4.6),
    "figure.dpi": 100.0,
    "savefig.dpi": 100.0,
    "font.family": "DejaVu Sans",
    "font.size": 10.0,
    "axes.titlesize": 11.0,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "grid.linewidth": 0.6,
    "lines.linewidth": 1.4,
    "lines.markersize": 4.5,
    "legend.framealpha": 0.9,
    "svg.fonttype": "path",
    "svg.hashsalt": "irsplot",
}

_COLORS = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)
_MARKERS = ("o", "s", "^", "v", "D", "x", "P", "*", "<", ">")

# Timestamp-like metadata keys per output format, suppressed for
# byte-stable regeneration.
_METADATA = {
    ".svg": {"Date": None},
    ".png": {"Software": None},
    ".pdf": {"CreationDate": None},
}


class SchemaError(ValueError):
    """CSV input does not conform to the sweep result schema."""


@dataclass(frozen=True)
class SeriesKey:
    rho: float
    kappa: float
    oscillator: bool


@dataclass(frozen=True)
class SeriesPoint:
    d_m: float
    mean_se_bpshz: float
    std_se_bpshz: float


@dataclass(frozen=True)
class PlotSpec:
    """One panel: input sweep CSV, panel id, output image path."""

    in_path: str
    panel: str
    out_path: str
    x_label: str = "BS-UE horizontal distance d (m)"
    y_label: str = "spectral efficiency (bits/s/Hz)"
    x_limits: tuple[float, float] | None = None
    y_limits: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.panel not in PANEL_IDS:
            raise ValueError(f"panel must be one of {PANEL_IDS}, got {self.panel!r}")


@dataclass(frozen=True)
class PanelSummary:
    """What a render produced: output path and the legend series."""

    out_path: str
    series_labels: tuple[str, ...] = field(default=())
    rows: int = 0

    @property
    def series_count(self) -> int:
        return len(self.series_labels)


def _parse_float(value: str, column: str, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise SchemaError(
            f"column '{column}': cannot parse {value!r} as a number (line {line})"
        ) from None


def read_series(path: str) -> dict[SeriesKey, list[SeriesPoint]]:
    """Parse a sweep CSV into per-(rho, kappa, oscillator) point lists.

    Points are sorted by distance within each series. Raises SchemaError
    naming the offending column when the header or a value does not
    match the result schema.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError("missing header row") from None
        for column in CSV_COLUMNS:
            if column not in header:
                raise SchemaError(f"missing column '{column}'")
        for column in header:
            if column not in CSV_COLUMNS:
                raise SchemaError(f"unexpected column '{column}'")
        index = {column: header.index(column) for column in CSV_COLUMNS}

        series: dict[SeriesKey, list[SeriesPoint]] = {}
        for line, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise SchemaError(
                    f"expected {len(CSV_COLUMNS)} fields, got {len(row)} (line {line})"
                )
            osc_bit = row[index["oscillator"]]
            if osc_bit not in ("0", "1"):
                raise SchemaError(
                    f"column 'oscillator': expected 0 or 1, got {osc_bit!r} (line {line})"
                )
            key = SeriesKey(
                rho=_parse_float(row[index["rho"]], "rho", line),
                kappa=_parse_float(row[index["kappa"]], "kappa", line),
                oscillator=osc_bit == "1",
            )
            point = SeriesPoint(
                d_m=_parse_float(row[index["d_m"]], "d_m", line),
                mean_se_bpshz=_parse_float(
                    row[index["mean_se_bpshz"]], "mean_se_bpshz", line
                ),
                std_se_bpshz=_parse_float(
                    row[index["std_se_bpshz"]], "std_se_bpshz", line
                ),
            )
            series.setdefault(key, []).append(point)

    for points in series.values():
        points.sort(key=lambda p: p.d_m)
    return series


def _sorted_keys(series: dict[SeriesKey, list[SeriesPoint]]) -> list[SeriesKey]:
    # Benchmark first (rho=1, kappa=inf), then decreasing rho/kappa,
    # oscillator-off before its on twin.
    return sorted(series, key=lambda k: (-k.rho, -k.kappa, k.oscillator))


def series_label(key: SeriesKey, varying: set[str]) -> str:
    """Legend label from the fields that vary across the file's series."""
    parts: list[str] = []
    if key.rho == 1.0 and math.isinf(key.kappa):
        parts.append("Perfect")
    else:
        if "rho" in varying:
            parts.append(f"ρ={key.rho:g}")
        if "kappa" in varying:
            kappa = "∞" if math.isinf(key.kappa) else f"{key.kappa:g}"
            parts.append(f"κ={kappa}")
    if "oscillator" in varying:
        parts.append("osc on" if key.oscillator else "osc off")
    if not parts:
        kappa = "∞" if math.isinf(key.kappa) else f"{key.kappa:g}"
        parts = [f"ρ={key.rho:g}", f"κ={kappa}"]
    return ", ".join(parts)


def _varying_fields(keys: list[SeriesKey]) -> set[str]:
    varying = set()
    if len({k.rho for k in keys}) > 1:
        varying.add("rho")
    if len({k.kappa for k in keys}) > 1:
        varying.add("kappa")
    if len({k.oscillator for k in keys}) > 1:
        varying.add("oscillator")
    return varying


def render_panel(spec: PlotSpec) -> PanelSummary:
    """Draw one panel from spec.in_path and write it to spec.out_path.

    A header-only CSV produces an empty-axes figure; the caller decides
    whether that deserves a warning. Output bytes depend only on the
    CSV content and the PlotSpec.
    """
    series = read_series(spec.in_path)
    keys = _sorted_keys(series)
    varying = _varying_fields(keys)

    pairs = []
    for key in keys:
        if (key.rho, key.kappa) not in pairs:
            pairs.append((key.rho, key.kappa))

    suffix = spec.out_path[spec.out_path.rfind(".") :].lower()
    metadata = _METADATA.get(suffix, {})

    labels = []
    with plt.rc_context(PANEL_STYLE):
        fig, ax = plt.subplots()
        try:
            for key in keys:
                points = series[key]
                label = series_label(key, varying)
                labels.append(label)
                pair_index = pairs.index((key.rho, key.kappa))
                ax.plot(
                    [p.d_m for p in points],
                    [p.mean_se_bpshz for p in points],
                    label=label,
                    color=_COLORS[pair_index % len(_COLORS)],
                    marker=_MARKERS[pair_index % len(_MARKERS)],
                    linestyle="--" if key.oscillator else "-",
                )
            ax.set_xlabel(spec.x_label)
            ax.set_ylabel(spec.y_label)
            ax.set_title(f"({spec.panel})")
            if spec.x_limits is not None:
                ax.set_xlim(spec.x_limits)
            if spec.y_limits is not None:
                ax.set_ylim(spec.y_limits)
            if labels:
                ax.legend(fontsize=7.0, ncol=1 + (len(labels) - 1) // 10)
            fig.tight_layout()
            fig.savefig(spec.out_path, metadata=metadata)
        finally:
            plt.close(fig)

    rows = sum(len(points) for points in series.values())
    return PanelSummary(
        out_path=spec.out_path, series_labels=tuple(labels), rows=rows
    )
