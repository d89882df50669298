"""Figure rendering for sweep CSV output."""

from .render import (
    FigureSpec,
    MissingColumnError,
    PanelSpec,
    fig1_figure_spec,
    fig2_figure_spec,
    fig3_figure_spec,
    read_table,
    render,
    series_data,
    zero_line_axes,
)

__all__ = [
    "FigureSpec",
    "MissingColumnError",
    "PanelSpec",
    "fig1_figure_spec",
    "fig2_figure_spec",
    "fig3_figure_spec",
    "read_table",
    "render",
    "series_data",
    "zero_line_axes",
]

__version__ = "0.1.0"
