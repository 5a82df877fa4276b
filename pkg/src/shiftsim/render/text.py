"""Plain-text rendering of diagram models.

Output is a pure function of the model: same model, same bytes. Levels are
drawn bottom-up (level 0 on the bottom line of a ladder), code-space cells
get bracket borders, shaded cells a '#' fill.
"""

from __future__ import annotations

from .model import DiagramCell, DiagramKind, DiagramModel


def _cell_text(cell: DiagramCell, width: int) -> str:
    left, right = ("[", "]") if cell.codespace else ("|", "|")
    fill = "#" if cell.shaded else " "
    body = f"{cell.label:^{width}}" if cell.label else fill * width
    return f"{left}{fill}{body}{fill}{right}"


def _render_ladder(model: DiagramModel) -> list[str]:
    lines = []
    width = max([len(c.label) for c in model.cells if c.label] + [1])
    for cell in sorted(model.cells, key=lambda c: -c.position[0]):
        level = int(cell.position[0])
        lines.append(f"{level:>4} {_cell_text(cell, width)}")
    return lines


def _render_grid(model: DiagramModel) -> list[str]:
    rows = sorted({int(c.position[0]) for c in model.cells})
    cols = sorted({int(c.position[1]) for c in model.cells})
    by_pos = {(int(c.position[0]), int(c.position[1])): c for c in model.cells}
    width = max([len(c.label) for c in model.cells if c.label] + [1])
    lines = []
    for row in reversed(rows):
        chunks = [_cell_text(by_pos[(row, col)], width) for col in cols]
        lines.append(f"{row:>4} " + " ".join(chunks))
    footer = "     " + " ".join(f"{col:^{width + 4}}" for col in cols)
    lines.append(footer.rstrip())
    return lines


def _render_axis(model: DiagramModel) -> list[str]:
    lines = []
    for cell in sorted(model.cells, key=lambda c: -c.position[0]):
        marker = "=====" if cell.codespace else "-----"
        lines.append(f"{cell.label:>6} {marker}  ({cell.position[0]:+.4f})")
    return lines


def _render_plane(model: DiagramModel) -> list[str]:
    vertical = [c for c in model.cells if c.position[0] == 0.0]
    horizontal = [c for c in model.cells if c.position[1] == 0.0 and c.position[0] != 0.0]
    lines = ["vertical axis:"]
    for cell in sorted(vertical, key=lambda c: -c.position[1]):
        lines.append(f"{cell.label:>6} =====  ({cell.position[1]:+.4f})")
    lines.append("horizontal axis:")
    for cell in sorted(horizontal, key=lambda c: c.position[0]):
        lines.append(f"{cell.label:>6} =====  ({cell.position[0]:+.4f})")
    return lines


_BODY_RENDERERS = {
    DiagramKind.LADDER: _render_ladder,
    DiagramKind.GRID: _render_grid,
    DiagramKind.CONTINUOUS_AXIS: _render_axis,
    DiagramKind.CONTINUOUS_PLANE: _render_plane,
}


def render_ascii(model: DiagramModel) -> str:
    """Deterministic monospace rendering of a diagram model."""
    lines = [f"# {model.kind.value}"]
    lines.extend(_BODY_RENDERERS[model.kind](model))
    for note in model.annotations:
        anchor = ",".join(f"{v:+.4f}" for v in note.anchor)
        lines.append(f"note: {note.text} @ ({anchor})")
    for entry in model.legend:
        lines.append(f"legend: {entry}")
    return "\n".join(lines) + "\n"
