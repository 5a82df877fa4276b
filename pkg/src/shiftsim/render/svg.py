"""SVG 1.1 rendering of diagram models.

Element order and ids are fixed by the model alone, so output is byte-stable
across runs. The default theme mirrors the level-diagram palette: grey fill
for occupied cells, green borders for the code space, magenta for
displacement annotations.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .model import DiagramKind, DiagramModel


@dataclass(frozen=True)
class Theme:
    """Color and font tokens; one table for every styling decision."""

    background: str = "#FFFFFF"
    cell_stroke: str = "#9B9B9B"
    codespace_stroke: str = "#417505"
    active_fill: str = "#9B9B9B"
    empty_fill: str = "#FFFFFF"
    annotation_color: str = "#BD10E0"
    text_color: str = "#000000"
    font_family: str = "monospace"
    font_size: int = 12


DEFAULT_THEME = Theme()


def _fmt(value: float) -> str:
    return f"{value:.1f}"


class _Canvas:
    def __init__(self, width: float, height: float, theme: Theme) -> None:
        self.theme = theme
        self.width = width
        self.height = height
        self.parts: list[str] = []

    def rect(self, eid: str, x: float, y: float, w: float, h: float,
             fill: str, stroke: str, stroke_width: float = 1.0) -> None:
        self.parts.append(
            f'<rect id="{eid}" x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
            f'height="{_fmt(h)}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{_fmt(stroke_width)}"/>'
        )

    def line(self, eid: str, x1: float, y1: float, x2: float, y2: float,
             stroke: str, stroke_width: float = 1.0) -> None:
        self.parts.append(
            f'<line id="{eid}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
            f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{_fmt(stroke_width)}"/>'
        )

    def text(self, eid: str, x: float, y: float, content: str,
             color: str, anchor: str = "start") -> None:
        self.parts.append(
            f'<text id="{eid}" x="{_fmt(x)}" y="{_fmt(y)}" fill="{color}" '
            f'font-family="{self.theme.font_family}" font-size="{self.theme.font_size}" '
            f'text-anchor="{anchor}">{escape(content)}</text>'
        )

    def document(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
            f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">'
        )
        body = "\n".join(self.parts)
        return f"{head}\n{body}\n</svg>\n"


def _cell_style(cell, theme: Theme) -> tuple[str, str, float]:
    fill = theme.active_fill if cell.shaded else theme.empty_fill
    stroke = theme.codespace_stroke if cell.codespace else theme.cell_stroke
    width = 2.5 if cell.codespace else 1.0
    return fill, stroke, width


def _draw_footer(canvas: _Canvas, model: DiagramModel, y: float) -> None:
    for i, entry in enumerate(model.legend):
        canvas.text(f"legend-{i}", 20, y + 16 * i, entry, canvas.theme.text_color)


def _render_ladder(model: DiagramModel, theme: Theme) -> str:
    levels = sorted(int(c.position[0]) for c in model.cells)
    top = max(levels)
    pitch, cell_w, cell_h = 30, 46, 26
    body_h = 20 + len(levels) * pitch
    height = body_h + 20 + 16 * len(model.legend) + 16 * len(model.annotations)
    canvas = _Canvas(280, height, theme)
    canvas.rect("bg", 0, 0, 280, height, theme.background, "none", 0)
    for i, cell in enumerate(sorted(model.cells, key=lambda c: c.position[0])):
        level = int(cell.position[0])
        y = 20 + (top - level) * pitch
        fill, stroke, sw = _cell_style(cell, theme)
        canvas.text(f"lvl-{i}", 44, y + 18, str(level), theme.text_color, anchor="end")
        canvas.rect(f"cell-{i}", 52, y, cell_w, cell_h, fill, stroke, sw)
        if cell.label:
            canvas.text(f"label-{i}", 52 + cell_w / 2, y + 18, cell.label,
                        theme.text_color, anchor="middle")
    note_y = body_h + 14
    for i, note in enumerate(model.annotations):
        canvas.text(f"ann-{i}", 20, note_y + 16 * i, note.text, theme.annotation_color)
    _draw_footer(canvas, model, note_y + 16 * len(model.annotations))
    return canvas.document()


def _render_grid(model: DiagramModel, theme: Theme) -> str:
    rows = sorted({int(c.position[0]) for c in model.cells})
    cols = sorted({int(c.position[1]) for c in model.cells})
    pitch, cell = 30, 26
    width = 70 + len(cols) * pitch
    body_h = 20 + len(rows) * pitch
    height = body_h + 40 + 16 * len(model.legend) + 16 * len(model.annotations)
    canvas = _Canvas(width, height, theme)
    canvas.rect("bg", 0, 0, width, height, theme.background, "none", 0)
    ordered = sorted(model.cells, key=lambda c: (c.position[0], c.position[1]))
    for i, dcell in enumerate(ordered):
        row, col = int(dcell.position[0]), int(dcell.position[1])
        x = 50 + cols.index(col) * pitch
        y = 20 + (len(rows) - 1 - rows.index(row)) * pitch
        fill, stroke, sw = _cell_style(dcell, theme)
        canvas.rect(f"cell-{i}", x, y, cell, cell, fill, stroke, sw)
        if dcell.label:
            canvas.text(f"label-{i}", x + cell / 2, y + 17, dcell.label,
                        theme.text_color, anchor="middle")
    for j, row in enumerate(rows):
        y = 20 + (len(rows) - 1 - j) * pitch
        canvas.text(f"row-{j}", 42, y + 17, str(row), theme.text_color, anchor="end")
    for j, col in enumerate(cols):
        canvas.text(f"col-{j}", 50 + j * pitch + cell / 2, body_h + 14,
                    str(col), theme.text_color, anchor="middle")
    note_y = body_h + 34
    for i, note in enumerate(model.annotations):
        canvas.text(f"ann-{i}", 20, note_y + 16 * i, note.text, theme.annotation_color)
    _draw_footer(canvas, model, note_y + 16 * len(model.annotations))
    return canvas.document()


def _axis_scale(values: list[float], span: float) -> float:
    extent = max((abs(v) for v in values), default=0.0)
    return span / extent if extent > 0 else 1.0


def _render_axis(model: DiagramModel, theme: Theme) -> str:
    positions = [c.position[0] for c in model.cells] + [a.anchor[0] for a in model.annotations]
    scale = _axis_scale(positions, 130.0)
    mid = 170.0
    body_h = 340
    height = body_h + 16 * len(model.legend) + 16 * len(model.annotations)
    canvas = _Canvas(300, height, theme)
    canvas.rect("bg", 0, 0, 300, height, theme.background, "none", 0)
    canvas.line("axis", 120, 20, 120, 320, theme.text_color)
    for i, cell in enumerate(sorted(model.cells, key=lambda c: c.position[0])):
        y = mid - cell.position[0] * scale
        stroke = theme.codespace_stroke if cell.codespace else theme.cell_stroke
        canvas.line(f"tick-{i}", 96, y, 144, y, stroke, 2.5)
        if cell.label:
            canvas.text(f"label-{i}", 152, y + 4, cell.label, theme.text_color)
    note_y = body_h + 8
    for i, note in enumerate(model.annotations):
        y = mid - note.anchor[0] * scale
        canvas.line(f"annmark-{i}", 60, y, 92, y, theme.annotation_color, 2.0)
        canvas.text(f"ann-{i}", 20, note_y + 16 * i, note.text, theme.annotation_color)
    _draw_footer(canvas, model, note_y + 16 * len(model.annotations))
    return canvas.document()


def _render_plane(model: DiagramModel, theme: Theme) -> str:
    xs = [c.position[0] for c in model.cells] + [a.anchor[0] for a in model.annotations]
    ys = [c.position[1] for c in model.cells] + [a.anchor[1] for a in model.annotations]
    scale_x = _axis_scale(xs, 130.0)
    scale_y = _axis_scale(ys, 130.0)
    cx, cy = 170.0, 170.0
    body_h = 340
    height = body_h + 16 * len(model.legend) + 16 * len(model.annotations)
    canvas = _Canvas(340, height, theme)
    canvas.rect("bg", 0, 0, 340, height, theme.background, "none", 0)
    canvas.line("axis-v", cx, 20, cx, 320, theme.text_color)
    canvas.line("axis-h", 20, cy, 320, cy, theme.text_color)
    ordered = sorted(model.cells, key=lambda c: (c.position[0], c.position[1]))
    for i, cell in enumerate(ordered):
        x = cx + cell.position[0] * scale_x
        y = cy - cell.position[1] * scale_y
        stroke = theme.codespace_stroke if cell.codespace else theme.cell_stroke
        if cell.position[0] == 0.0:
            canvas.line(f"tick-{i}", x - 12, y, x + 12, y, stroke, 2.5)
        else:
            canvas.line(f"tick-{i}", x, y - 12, x, y + 12, stroke, 2.5)
        if cell.label:
            canvas.text(f"label-{i}", x + 14, y - 4, cell.label, theme.text_color)
    note_y = body_h + 8
    for i, note in enumerate(model.annotations):
        x = cx + note.anchor[0] * scale_x
        y = cy - note.anchor[1] * scale_y
        canvas.line(f"annmark-{i}", x - 6, y - 6, x + 6, y + 6, theme.annotation_color, 2.0)
        canvas.line(f"annmark2-{i}", x - 6, y + 6, x + 6, y - 6, theme.annotation_color, 2.0)
        canvas.text(f"ann-{i}", 20, note_y + 16 * i, note.text, theme.annotation_color)
    _draw_footer(canvas, model, note_y + 16 * len(model.annotations))
    return canvas.document()


_RENDERERS = {
    DiagramKind.LADDER: _render_ladder,
    DiagramKind.GRID: _render_grid,
    DiagramKind.CONTINUOUS_AXIS: _render_axis,
    DiagramKind.CONTINUOUS_PLANE: _render_plane,
}


def render_svg(model: DiagramModel, theme: Theme = DEFAULT_THEME) -> str:
    """Deterministic SVG 1.1 document for a diagram model."""
    return _RENDERERS[model.kind](model, theme)
