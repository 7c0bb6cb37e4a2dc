"""Figure registry: which columns each figure plots and how axes are labeled.

Two dataset shapes exist.  Level tables (``fig1``) hold the two lowest
energies against a single swept knob, one section per knob.  Sweep tables
(``fig3`` onward) hold one closed cycle per row.  Frequency-knob figures
show inverse abscissas, so the registry records the transformation while
the CSV always stores the raw knob value.
"""

from dataclasses import dataclass


# Caption color order: blue, red, yellow, purple, green; one per stretch
# factor, assigned by ascending alpha rank.
COLORS = ("#0072bd", "#d95319", "#edb120", "#7e2f8e", "#77ac30")

LEVEL_COLORS = {"e0": COLORS[0], "e1": COLORS[1]}


@dataclass(frozen=True)
class Panel:
    """One axes: a y column, its label, and optional transforms."""

    column: str
    ylabel: str
    invert: bool = False
    markers: bool = False
    xlabel: str = ""  # level figures label x per panel; sweep figures share one


@dataclass(frozen=True)
class FigureDef:
    figure_id: str
    kind: str  # "sweep" or "levels"
    xlabel: str
    panels: tuple[Panel, ...]
    invert_x: bool = False


FIGURES = {
    "fig1": FigureDef("fig1", "levels", "", (
        Panel("g", r"$E\,[\Omega]$", xlabel=r"$g\,[\Omega]$"),
        Panel("omega", r"$E\,[\Omega]$", xlabel=r"$\omega\,[\Omega]$"),
        Panel("bigomega", r"$E\,[\omega]$", xlabel=r"$\Omega\,[\omega]$"),
    )),
    "fig3": FigureDef("fig3", "sweep", r"$g_1\,[\Omega]$", (
        Panel("xi2", r"$g_2\,[\Omega]$"),
        Panel("xi4", r"$g_4\,[\Omega]$", markers=True),
    )),
    "fig4": FigureDef("fig4", "sweep", r"$g_1\,[\Omega]$", (
        Panel("q_in", r"$Q_\mathrm{in}\,[\Omega]$"),
        Panel("w_total", r"$W_\mathrm{total}\,[\Omega]$", markers=True),
    )),
    "fig5": FigureDef("fig5", "sweep", r"$g_1\,[\Omega]$", (
        Panel("eta", r"$\eta$", markers=True),
    )),
    "fig6": FigureDef("fig6", "sweep", r"$1/\omega_1\,[\Omega^{-1}]$", (
        Panel("xi2", r"$1/\omega_2\,[\Omega^{-1}]$", invert=True),
        Panel("xi4", r"$1/\omega_4\,[\Omega^{-1}]$", invert=True),
    ), invert_x=True),
    "fig7": FigureDef("fig7", "sweep", r"$1/\omega_1\,[\Omega^{-1}]$", (
        Panel("q_in", r"$Q_\mathrm{in}\,[\Omega]$"),
        Panel("w_total", r"$W_\mathrm{total}\,[\Omega]$"),
    ), invert_x=True),
    "fig8": FigureDef("fig8", "sweep", r"$1/\omega_1\,[\Omega^{-1}]$", (
        Panel("eta", r"$\eta$"),
    ), invert_x=True),
    "fig9": FigureDef("fig9", "sweep", r"$1/\Omega_1\,[\omega^{-1}]$", (
        Panel("xi2", r"$1/\Omega_2\,[\omega^{-1}]$", invert=True),
        Panel("xi4", r"$1/\Omega_4\,[\omega^{-1}]$", invert=True),
    ), invert_x=True),
    "fig10": FigureDef("fig10", "sweep", r"$1/\Omega_1\,[\omega^{-1}]$", (
        Panel("q_in", r"$Q_\mathrm{in}\,[\omega]$"),
        Panel("w_total", r"$W_\mathrm{total}\,[\omega]$"),
    ), invert_x=True),
}
