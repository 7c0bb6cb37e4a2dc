"""Static figure rendering for rabicycle CSV datasets."""

from .figures import FIGURES, FigureDef, Panel
from .render import PlotSpec, SchemaError, render

__all__ = ["FIGURES", "FigureDef", "Panel", "PlotSpec", "SchemaError", "render"]
