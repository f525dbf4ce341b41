"""Figure panels for spectral-efficiency sweep CSVs."""

from .panels import (
    CSV_COLUMNS,
    PANEL_IDS,
    PANEL_STYLE,
    PanelSummary,
    PlotSpec,
    SchemaError,
    SeriesKey,
    SeriesPoint,
    read_series,
    render_panel,
    series_label,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_COLUMNS",
    "PANEL_IDS",
    "PANEL_STYLE",
    "PanelSummary",
    "PlotSpec",
    "SchemaError",
    "SeriesKey",
    "SeriesPoint",
    "read_series",
    "render_panel",
    "series_label",
    "__version__",
]
