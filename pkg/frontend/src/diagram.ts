/**
 * Client-side SVG drawing of server diagram models.
 *
 * Pure presentation: the model already says which cells are shaded and
 * which belong to the code space, so no decoding logic lives here.
 */

import type { DiagramModel, DiagramCell } from './protocol';

const PALETTE = {
  activeFill: '#9B9B9B',
  emptyFill: '#FFFFFF',
  codespaceStroke: '#417505',
  cellStroke: '#9B9B9B',
  annotation: '#BD10E0',
  text: '#1A1A1A',
};

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function cellRect(cell: DiagramCell, x: number, y: number, size: number, id: string): string {
  const fill = cell.shaded ? PALETTE.activeFill : PALETTE.emptyFill;
  const stroke = cell.codespace ? PALETTE.codespaceStroke : PALETTE.cellStroke;
  const width = cell.codespace ? 2.5 : 1;
  const label = cell.label
    ? `<text x="${x + size / 2}" y="${y + size * 0.68}" text-anchor="middle" ` +
      `font-family="monospace" font-size="12" fill="${PALETTE.text}">${esc(cell.label)}</text>`
    : '';
  return (
    `<rect id="${id}" x="${x}" y="${y}" width="${size}" height="${size}" ` +
    `fill="${fill}" stroke="${stroke}" stroke-width="${width}"/>` + label
  );
}

function drawLadder(model: DiagramModel): string {
  const cells = [...model.cells].sort((a, b) => a.position[0] - b.position[0]);
  const top = cells.length - 1;
  const size = 30;
  const parts = cells.map((cell, index) => {
    const y = 16 + (top - index) * (size + 4);
    const levelText =
      `<text x="26" y="${y + size * 0.68}" text-anchor="end" font-family="monospace" ` +
      `font-size="12" fill="${PALETTE.text}">${cell.position[0]}</text>`;
    return levelText + cellRect(cell, 34, y, size, `cell-${index}`);
  });
  const height = 32 + cells.length * (size + 4);
  return svgDocument(140, height, parts.join(''));
}

function drawGrid(model: DiagramModel): string {
  const rows = [...new Set(model.cells.map((c) => c.position[0]))].sort((a, b) => a - b);
  const cols = [...new Set(model.cells.map((c) => c.position[1]))].sort((a, b) => a - b);
  const size = 26;
  const parts = model.cells.map((cell, index) => {
    const x = 30 + cols.indexOf(cell.position[1]) * (size + 3);
    const y = 16 + (rows.length - 1 - rows.indexOf(cell.position[0])) * (size + 3);
    return cellRect(cell, x, y, size, `cell-${index}`);
  });
  const width = 60 + cols.length * (size + 3);
  const height = 40 + rows.length * (size + 3);
  return svgDocument(width, height, parts.join(''));
}

function drawAxis(model: DiagramModel, horizontalToo: boolean): string {
  const positions = model.cells.map((c) => (horizontalToo ? c.position[1] ?? 0 : c.position[0]));
  const anchors = model.annotations.map((a) => a.anchor[horizontalToo ? 1 : 0] ?? 0);
  const extent = Math.max(...positions.map(Math.abs), ...anchors.map(Math.abs), 1e-9);
  const scale = 130 / extent;
  const mid = 160;
  const parts: string[] = [`<line x1="90" y1="20" x2="90" y2="300" stroke="${PALETTE.text}"/>`];
  model.cells.forEach((cell, index) => {
    const value = horizontalToo ? cell.position[1] ?? cell.position[0] : cell.position[0];
    const y = mid - value * scale;
    parts.push(
      `<line id="tick-${index}" x1="70" y1="${y}" x2="110" y2="${y}" ` +
        `stroke="${cell.codespace ? PALETTE.codespaceStroke : PALETTE.cellStroke}" stroke-width="2.5"/>`,
    );
    if (cell.label) {
      parts.push(
        `<text x="118" y="${y + 4}" font-family="monospace" font-size="12" ` +
          `fill="${PALETTE.text}">${esc(cell.label)}</text>`,
      );
    }
  });
  model.annotations.forEach((note, index) => {
    const y = mid - (note.anchor[0] ?? 0) * scale;
    parts.push(
      `<line id="ann-${index}" x1="40" y1="${y}" x2="64" y2="${y}" ` +
        `stroke="${PALETTE.annotation}" stroke-width="2"/>`,
      `<text x="8" y="${316 + 14 * index}" font-family="monospace" font-size="12" ` +
        `fill="${PALETTE.annotation}">${esc(note.text)}</text>`,
    );
  });
  return svgDocument(240, 320 + 16 * model.annotations.length, parts.join(''));
}

function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
    `width="${width}" height="${height}">${body}</svg>`
  );
}

/** Render any server diagram model to an SVG string. */
export function drawDiagram(model: DiagramModel): string {
  switch (model.kind) {
    case 'ladder':
      return drawLadder(model);
    case 'grid':
      return drawGrid(model);
    case 'continuous_axis':
      return drawAxis(model, false);
    case 'continuous_plane':
      return drawAxis(model, true);
  }
}

/** Legend lines shown under the diagram. */
export function legendLines(model: DiagramModel): string[] {
  return model.legend;
}
