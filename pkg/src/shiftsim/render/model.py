"""Neutral diagram model for the level-diagram visual language.

Builders turn codes and states into a renderer-independent model: one cell
per level (or grid site / lattice tick) with shading for occupied positions,
a code-space flag, and optional labels. Renderers consume only the model,
so a serialized model is all a client needs to draw the picture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ..gkp import GkpCode, GkpState
from ..ladder import LadderCode, LadderState
from ..planar import PlanarCode, PlanarState


class DiagramKind(enum.Enum):
    LADDER = "ladder"
    GRID = "grid"
    CONTINUOUS_AXIS = "continuous_axis"
    CONTINUOUS_PLANE = "continuous_plane"


@dataclass(frozen=True)
class DiagramCell:
    """One drawable site: a ladder level, grid cell, or lattice tick."""

    position: tuple[float, ...]
    shaded: bool = False
    codespace: bool = False
    label: str = ""


@dataclass(frozen=True)
class DiagramAnnotation:
    text: str
    anchor: tuple[float, ...]


@dataclass(frozen=True)
class DiagramModel:
    kind: DiagramKind
    cells: tuple[DiagramCell, ...]
    annotations: tuple[DiagramAnnotation, ...] = ()
    legend: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        positions = [cell.position for cell in self.cells]
        if len(set(positions)) != len(positions):
            raise ValueError("cell positions must be unique")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "cells": [
                {
                    "position": list(cell.position),
                    "shaded": cell.shaded,
                    "codespace": cell.codespace,
                    "label": cell.label,
                }
                for cell in self.cells
            ],
            "annotations": [
                {"text": note.text, "anchor": list(note.anchor)}
                for note in self.annotations
            ],
            "legend": list(self.legend),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "DiagramModel":
        return cls(
            kind=DiagramKind(payload["kind"]),
            cells=tuple(
                DiagramCell(
                    position=tuple(cell["position"]),
                    shaded=cell["shaded"],
                    codespace=cell["codespace"],
                    label=cell.get("label", ""),
                )
                for cell in payload["cells"]
            ),
            annotations=tuple(
                DiagramAnnotation(text=note["text"], anchor=tuple(note["anchor"]))
                for note in payload.get("annotations", ())
            ),
            legend=tuple(payload.get("legend", ())),
        )


def _support_legend(code: LadderCode) -> tuple[str, str]:
    zero = ",".join(str(l) for l in code.support_zero)
    one = ",".join(str(l) for l in code.support_one)
    return (f"0L peaks: {zero}", f"1L peaks: {one}")


def model_ladder(
    code: LadderCode,
    state: Optional[LadderState] = None,
    *,
    mod_labels: bool = False,
    highlight: Optional[Iterable[int]] = None,
    annotations: Sequence[DiagramAnnotation] = (),
) -> DiagramModel:
    """One cell per level, bottom-up.

    Cells are shaded where the state has amplitude; passing ``highlight``
    (e.g. the candidate errors for a syndrome) shades those levels instead.
    ``mod_labels`` writes each level's residue mod spacing into the cell.
    """
    shaded_levels = (
        set(highlight)
        if highlight is not None
        else {l for l in state.support} if state is not None else set()
    )
    codespace = set(code.support_zero) | set(code.support_one)
    cells = tuple(
        DiagramCell(
            position=(level,),
            shaded=level in shaded_levels,
            codespace=level in codespace,
            label=str(level % code.spacing) if mod_labels else "",
        )
        for level in range(code.num_levels)
    )
    return DiagramModel(
        kind=DiagramKind.LADDER,
        cells=cells,
        annotations=tuple(annotations),
        legend=_support_legend(code),
    )


def model_grid(
    code: PlanarCode,
    state: Optional[PlanarState] = None,
    *,
    mod_labels: bool = False,
    highlight: Optional[Iterable[tuple[int, int]]] = None,
    annotations: Sequence[DiagramAnnotation] = (),
) -> DiagramModel:
    """2D grid: rows follow the vertical ladder, columns the horizontal one.

    Code-space cells sit at the intersections of the two peak lattices; with
    a state, the displaced lattice (peaks moved by the accumulated shifts)
    is shaded. ``highlight`` shades an explicit cell set instead.
    """
    vert, hori = code.vertical, code.horizontal
    rows_cs = set(vert.support_zero) | set(vert.support_one)
    cols_cs = set(hori.support_zero) | set(hori.support_one)
    shaded: set[tuple[int, int]] = set()
    if highlight is not None:
        shaded = {(int(r), int(c)) for r, c in highlight}
    elif state is not None:
        for row in rows_cs:
            for col in cols_cs:
                r, c = row + state.v_shift, col + state.h_shift
                if vert.boundary.value == "cyclic":
                    r %= vert.num_levels
                if hori.boundary.value == "cyclic":
                    c %= hori.num_levels
                if 0 <= r < vert.num_levels and 0 <= c < hori.num_levels:
                    shaded.add((r, c))
    cells = []
    for row in range(vert.num_levels):
        for col in range(hori.num_levels):
            label = ""
            if mod_labels:
                label = f"{row % vert.spacing},{col % hori.spacing}"
            cells.append(
                DiagramCell(
                    position=(row, col),
                    shaded=(row, col) in shaded,
                    codespace=row in rows_cs and col in cols_cs,
                    label=label,
                )
            )
    legend = (
        f"vertical spacing: {vert.spacing}",
        f"horizontal spacing: {hori.spacing}",
    )
    return DiagramModel(
        kind=DiagramKind.GRID,
        cells=tuple(cells),
        annotations=tuple(annotations),
        legend=legend,
    )


def _tick_label(multiple: int, symbol: str) -> str:
    if multiple == 0:
        return "0"
    if multiple == 1:
        return f"+{symbol}"
    if multiple == -1:
        return f"-{symbol}"
    return f"{multiple:+d}{symbol}"


def model_axis(
    code: GkpCode,
    state: Optional[GkpState] = None,
    *,
    half_range: int = 4,
    annotations: Sequence[DiagramAnnotation] = (),
) -> DiagramModel:
    """Vertical continuous axis with lattice ticks at multiples of lambda_v.

    Even ticks carry |0_L>, odd ticks |1_L>; a state's displacement is shown
    as an annotation at its physical position.
    """
    cells = tuple(
        DiagramCell(
            position=(m * code.lambda_v,),
            shaded=False,
            codespace=True,
            label=_tick_label(m, "lv"),
        )
        for m in range(-half_range, half_range + 1)
    )
    notes = list(annotations)
    if state is not None:
        notes.append(
            DiagramAnnotation(text=f"dv={state.delta_v:+.4f}", anchor=(state.delta_v,))
        )
    legend = (
        f"lv={code.lambda_v:.6f}",
        f"lh={code.lambda_h:.6f}",
        "even ticks: 0L, odd ticks: 1L",
    )
    return DiagramModel(
        kind=DiagramKind.CONTINUOUS_AXIS,
        cells=cells,
        annotations=tuple(notes),
        legend=legend,
    )


def model_plane(
    code: GkpCode,
    state: Optional[GkpState] = None,
    *,
    half_range: int = 3,
    annotations: Sequence[DiagramAnnotation] = (),
) -> DiagramModel:
    """Two crossed continuous axes with lattice ticks on each."""
    cells = []
    for m in range(-half_range, half_range + 1):
        cells.append(
            DiagramCell(
                position=(0.0, m * code.lambda_v),
                codespace=True,
                label=_tick_label(m, "lv"),
            )
        )
        if m != 0:
            cells.append(
                DiagramCell(
                    position=(m * code.lambda_h, 0.0),
                    codespace=True,
                    label=_tick_label(m, "lh"),
                )
            )
    notes = list(annotations)
    if state is not None:
        notes.append(
            DiagramAnnotation(
                text=f"d=({state.delta_h:+.4f},{state.delta_v:+.4f})",
                anchor=(state.delta_h, state.delta_v),
            )
        )
    legend = (f"lv={code.lambda_v:.6f}", f"lh={code.lambda_h:.6f}")
    return DiagramModel(
        kind=DiagramKind.CONTINUOUS_PLANE,
        cells=tuple(cells),
        annotations=tuple(notes),
        legend=legend,
    )
