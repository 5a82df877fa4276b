from .model import (
    DiagramAnnotation,
    DiagramCell,
    DiagramKind,
    DiagramModel,
    model_axis,
    model_grid,
    model_ladder,
    model_plane,
)
from .svg import DEFAULT_THEME, Theme, render_svg
from .text import render_ascii

__all__ = [
    "DiagramAnnotation",
    "DiagramCell",
    "DiagramKind",
    "DiagramModel",
    "model_axis",
    "model_grid",
    "model_ladder",
    "model_plane",
    "DEFAULT_THEME",
    "Theme",
    "render_svg",
    "render_ascii",
]
