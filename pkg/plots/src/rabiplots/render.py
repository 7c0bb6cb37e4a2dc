"""Render sweep and level CSV datasets to static figure files.

The input contract is the CSV emitted by the ``rabicycle`` CLI; nothing
here imports that package.  Rows whose status is not ``ok`` are dropped,
series are grouped by (method, alpha) with exact drawn solid and approx
dashed, and dot markers flag the first row of each series where the
deep-strong-coupling threshold is crossed.  Output is SVG by default and
is byte-stable for identical input.
"""

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .figures import COLORS, FIGURES, LEVEL_COLORS, FigureDef, Panel

SWEEP_COLUMNS = ("varied", "method", "xi1", "alpha", "xi2", "xi3", "xi4",
                 "q_in", "q_out", "w_total", "eta", "dsc_flag", "status")
LEVELS_COLUMNS = ("varied", "method", "xi", "e0", "e1", "status")

_LINEWIDTH = 1.4

_RC = {
    "svg.hashsalt": "rabiplots",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "legend.frameon": False,
}


class SchemaError(ValueError):
    """Input header does not match the expected dataset columns."""

    def __init__(self, path, missing, unexpected):
        self.missing = tuple(missing)
        self.unexpected = tuple(unexpected)
        parts = []
        if self.missing:
            parts.append("missing columns: " + ", ".join(self.missing))
        if self.unexpected:
            parts.append("unexpected columns: " + ", ".join(self.unexpected))
        super().__init__(f"{path}: " + "; ".join(parts))


@dataclass(frozen=True)
class PlotSpec:
    figure_id: str
    csv_path: str
    out_path: str
    image_format: str = "svg"


@dataclass
class Series:
    """Points for one drawn line, already in plot coordinates."""

    method: str
    label: str
    color: str
    x: list = field(default_factory=list)
    y: list = field(default_factory=list)
    marker: Optional[tuple] = None  # (x, y) of the first threshold row

    @property
    def gid(self) -> str:
        return f"series-{self.method}-{self.label}"

    @property
    def linestyle(self) -> str:
        return "-" if self.method == "exact" else "--"


def load_rows(path, columns) -> list:
    """Read a dataset, enforcing the exact header. Empty file -> []."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        got = tuple(reader.fieldnames)
        if got != columns:
            missing = [c for c in columns if c not in got]
            unexpected = [c for c in got if c not in columns]
            raise SchemaError(path, missing, unexpected)
        return list(reader)


def _usable(rows) -> list:
    return [r for r in rows if r["status"] == "ok"]


def sweep_series(rows, fig: FigureDef, panel: Panel) -> list:
    """Group ok rows into per-(method, alpha) series for one panel.

    Colors follow ascending alpha rank so the same alpha keeps its color
    across methods and panels.  The threshold marker is the first row in
    file order whose dsc_flag is true; file order is ascending in the
    raw knob, which inverse abscissas reverse, so the scan happens before
    the points are sorted for drawing.
    """
    ok = _usable(rows)
    alphas = sorted({float(r["alpha"]) for r in ok})
    color_of = {a: COLORS[i % len(COLORS)] for i, a in enumerate(alphas)}
    out = []
    for method in ("exact", "approx"):
        for a in alphas:
            sel = [r for r in ok
                   if r["method"] == method and float(r["alpha"]) == a]
            if not sel:
                continue
            s = Series(method, format(a, "g"), color_of[a])
            pts = []
            for r in sel:
                x = float(r["xi1"])
                y = float(r[panel.column])
                if fig.invert_x:
                    x = 1.0 / x
                if panel.invert:
                    y = 1.0 / y
                pts.append((x, y))
                if panel.markers and s.marker is None and r["dsc_flag"] == "true":
                    s.marker = (x, y)
            pts.sort()
            s.x = [p[0] for p in pts]
            s.y = [p[1] for p in pts]
            out.append(s)
    return out


def levels_series(rows, knob: str) -> list:
    """Two levels per method for one knob section of a level table."""
    ok = [r for r in _usable(rows) if r["varied"] == knob]
    out = []
    for method in ("exact", "approx"):
        for idx, col in enumerate(("e0", "e1")):
            pts = sorted((float(r["xi"]), float(r[col]))
                         for r in ok if r["method"] == method)
            if not pts:
                continue
            s = Series(method, f"{knob}-{col}", LEVEL_COLORS[col])
            s.x = [p[0] for p in pts]
            s.y = [p[1] for p in pts]
            out.append(s)
    return out


def _draw_panel(ax, series, xlabel, ylabel, letter, legend_keys, gid_suffix=""):
    # ids must stay unique when the same series recurs across panels
    for s in series:
        label = "_nolegend_"
        key = s.label
        if key not in legend_keys:
            legend_keys.add(key)
            label = _legend_text(s)
        ax.plot(s.x, s.y, color=s.color, linestyle=s.linestyle,
                linewidth=_LINEWIDTH, gid=s.gid + gid_suffix, label=label)
    dots = [(s.marker[0], s.marker[1], s.color) for s in series if s.marker]
    if dots:
        ax.scatter([d[0] for d in dots], [d[1] for d in dots],
                   c=[d[2] for d in dots], s=22, zorder=5,
                   edgecolors="none", gid="dsc-markers")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if letter:
        ax.set_title(letter, loc="left", fontsize=9)


def _legend_text(s: Series) -> str:
    if s.label.endswith(("e0", "e1")):
        return r"$E_0$" if s.label.endswith("e0") else r"$E_1$"
    return rf"$\alpha={s.label}$"


def render(spec: PlotSpec) -> Optional[Path]:
    """Render one figure; returns the output path, or None on empty data.

    The CSV is read once and never written.  A header mismatch raises
    SchemaError naming the offending columns; a dataset with no usable
    rows warns and produces no file.
    """
    if spec.figure_id not in FIGURES:
        known = ", ".join(FIGURES)
        raise ValueError(f"unknown figure id '{spec.figure_id}' (known: {known})")
    if spec.image_format not in ("svg", "png"):
        raise ValueError(f"unknown image format '{spec.image_format}'")
    fig_def = FIGURES[spec.figure_id]
    columns = LEVELS_COLUMNS if fig_def.kind == "levels" else SWEEP_COLUMNS
    rows = load_rows(spec.csv_path, columns)
    if not _usable(rows):
        warnings.warn(f"{spec.csv_path}: no plottable rows, skipping "
                      f"{spec.figure_id}", stacklevel=2)
        return None

    n = len(fig_def.panels)
    with matplotlib.rc_context(_RC):
        fig, axes = plt.subplots(1, n, figsize=(4.0 * n, 3.0),
                                 constrained_layout=True)
        axes = [axes] if n == 1 else list(axes)
        legend_keys = set()
        for i, (ax, panel) in enumerate(zip(axes, fig_def.panels)):
            if fig_def.kind == "levels":
                series = levels_series(rows, panel.column)
                xlabel, suffix = panel.xlabel, ""
            else:
                series = sweep_series(rows, fig_def, panel)
                xlabel = fig_def.xlabel
                suffix = f"-{panel.column}" if n > 1 else ""
            letter = f"({chr(97 + i)})" if n > 1 else ""
            _draw_panel(ax, series, xlabel, panel.ylabel, letter, legend_keys,
                        gid_suffix=suffix)
        axes[0].legend(fontsize=8)
        out = Path(spec.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        metadata = {"Date": None} if spec.image_format == "svg" else None
        fig.savefig(out, format=spec.image_format, metadata=metadata)
        plt.close(fig)
    return out
