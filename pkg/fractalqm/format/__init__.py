"""Format module for fractalqm."""

from .format import (
    SIGNIFICANT_DIGITS,
    OutputFormat,
    DataTable,
    PlotLayout,
    PLOT_LAYOUTS,
    format_value,
    read_table,
    emit_plot_script,
)

__all__ = [
    "SIGNIFICANT_DIGITS",
    "OutputFormat",
    "DataTable",
    "PlotLayout",
    "PLOT_LAYOUTS",
    "format_value",
    "read_table",
    "emit_plot_script",
]
