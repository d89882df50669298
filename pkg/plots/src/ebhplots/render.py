"""Render multi-panel figures from sweep CSV files.

A figure spec is a small JSON file naming the input CSVs, the shared
x-axis column, and one panel per plotted column.  Rendering is a pure
function of the CSV bytes: identical inputs plot identical series.
"""

from __future__ import annotations

import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from matplotlib.figure import Figure

# panels showing these columns get a horizontal zero reference line
ZERO_LINE_COLUMNS = {"lambda", "delta"}
LINE_STYLES = ("-", "--", ":", "-.")


class MissingColumnError(KeyError):
    def __init__(self, column, path):
        super().__init__(f"column {column!r} not found in {path}")
        self.column = column


@dataclass
class PanelSpec:
    columns: list
    ylabel: str = ""


@dataclass
class FigureSpec:
    inputs: list  # [{"path": ..., "label": ...}, ...]
    axis: str  # x-axis column name
    panels: list  # of PanelSpec
    xlabel: str = ""
    title: str = ""
    out: str = ""

    @classmethod
    def from_file(cls, path) -> "FigureSpec":
        raw = json.loads(Path(path).read_text())
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw) -> "FigureSpec":
        panels = [
            PanelSpec(columns=list(p["columns"]), ylabel=p.get("ylabel", ""))
            for p in raw["panels"]
        ]
        return cls(
            inputs=list(raw["inputs"]),
            axis=raw["axis"],
            panels=panels,
            xlabel=raw.get("xlabel", raw["axis"]),
            title=raw.get("title", ""),
            out=raw.get("out", ""),
        )


def read_table(path):
    """Parse a sweep CSV into {column: [floats]}; 'nan' cells become NaN."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(x) for x in line] for line in reader]
    return {name: [row[i] for row in rows] for i, name in enumerate(header)}


def _column(table, name, path):
    if name not in table:
        raise MissingColumnError(name, path)
    return table[name]


def render(spec: FigureSpec, out=None) -> Figure:
    """Draw the spec's panels, save the image if a path is known, and
    return the figure.  Data lines carry gid 'series:<column>:<label>';
    zero references carry gid 'zero-line'."""
    tables = []
    for entry in spec.inputs:
        path = entry["path"]
        table = read_table(path)
        if not next(iter(table.values()), None):
            print(f"warning: {path} has a header but no data rows", file=sys.stderr)
        tables.append((entry.get("label", Path(path).stem), path, table))

    fig = Figure(figsize=(6.0, 2.4 * len(spec.panels)), constrained_layout=True)
    axes = fig.subplots(len(spec.panels), 1, sharex=True, squeeze=False)[:, 0]
    for ax, panel in zip(axes, spec.panels):
        for k, (label, path, table) in enumerate(tables):
            x = _column(table, spec.axis, path)
            style = LINE_STYLES[k % len(LINE_STYLES)]
            for column in panel.columns:
                y = _column(table, column, path)
                name = column if len(tables) == 1 else f"{column} [{label}]"
                ax.plot(x, y, style, label=name, gid=f"series:{column}:{label}")
        if ZERO_LINE_COLUMNS.intersection(panel.columns):
            ax.axhline(0.0, color="0.6", linewidth=0.8, gid="zero-line")
        ax.set_ylabel(panel.ylabel or ", ".join(panel.columns))
        ax.legend(fontsize="small", frameon=False)
    axes[-1].set_xlabel(spec.xlabel)
    if spec.title:
        fig.suptitle(spec.title)
    target = out or spec.out
    if target:
        fig.savefig(target)
    return fig


def series_data(fig: Figure):
    """Test hook: {(column, label): (xdata, ydata)} for every plotted series."""
    out = {}
    for ax in fig.axes:
        for line in ax.lines:
            gid = line.get_gid() or ""
            if gid.startswith("series:"):
                _, column, label = gid.split(":", 2)
                out[(column, label, id(ax))] = (
                    list(line.get_xdata()),
                    list(line.get_ydata()),
                )
    return out


def zero_line_axes(fig: Figure):
    """Test hook: which axes carry the zero reference line."""
    return [
        ax
        for ax in fig.axes
        if any((line.get_gid() or "") == "zero-line" for line in ax.lines)
    ]


def fig1_figure_spec(csv_path, out="fig1.png") -> FigureSpec:
    """Staggered-coupling sweep: order parameter, witness, entropy."""
    return FigureSpec(
        inputs=[{"path": str(csv_path), "label": "sweep"}],
        axis="ULR_over_U",
        xlabel="U_LR / U",
        panels=[
            PanelSpec(columns=["theta_rms"], ylabel="Theta_rms"),
            PanelSpec(columns=["lambda"], ylabel="lambda"),
            PanelSpec(columns=["S_V"], ylabel="S_V"),
        ],
        out=out,
    )


def fig2_figure_spec(csv_path, out="fig2.png") -> FigureSpec:
    """Hopping sweep: witness, energy gap, entropy."""
    return FigureSpec(
        inputs=[{"path": str(csv_path), "label": "sweep"}],
        axis="2J_over_U",
        xlabel="2J / U",
        panels=[
            PanelSpec(columns=["lambda"], ylabel="lambda"),
            PanelSpec(columns=["delta"], ylabel="gap"),
            PanelSpec(columns=["S_V"], ylabel="S_V"),
        ],
        out=out,
    )


def fig3_figure_spec(csv_paths, labels=None, out="fig3.png") -> FigureSpec:
    """Overlay of hopping sweeps at several long-range couplings."""
    paths = list(csv_paths)
    labels = labels or [Path(p).stem for p in paths]
    return FigureSpec(
        inputs=[{"path": str(p), "label": lab} for p, lab in zip(paths, labels)],
        axis="2J_over_U",
        xlabel="2J / U",
        panels=[
            PanelSpec(columns=["lambda"], ylabel="lambda"),
            PanelSpec(columns=["delta"], ylabel="gap"),
            PanelSpec(columns=["S_V"], ylabel="S_V"),
        ],
        out=out,
    )
