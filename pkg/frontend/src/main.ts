/**
 * Browser bootstrap: preset picker, action buttons, diagram pane,
 * narration log, teacher toggle, and the spacing slider for the
 * continuous lesson.
 */

import { LessonController } from './app';
import { drawDiagram, legendLines } from './diagram';
import { PRESETS, presetById } from './presets';
import type { LessonPreset } from './presets';
import { HttpPlaygroundClient } from './protocol';
import type { SessionAction } from './protocol';

const ACTION_PAYLOAD_PROMPTS: Partial<Record<SessionAction, () => Record<string, unknown>>> = {
  InjectShift: () => {
    const raw = (document.getElementById('shift-input') as HTMLInputElement).value;
    const config = currentPreset().config;
    if (config.kind === 'ladder') {
      return { amount: Number(raw) };
    }
    const parts = raw.split(',').map(Number);
    return { dv: parts[0] ?? 0, dh: parts[1] ?? 0 };
  },
};

const ALL_ACTIONS: SessionAction[] = [
  'InjectShift',
  'MeasureSyndrome',
  'CandidateErrors',
  'StepDecoder',
  'MeasureLogical',
  'Reset',
];

let controller: LessonController | null = null;
let activePresetId = PRESETS[0].id;

function currentPreset(): LessonPreset {
  return presetById(activePresetId);
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

async function startLesson(): Promise<void> {
  const teacher = el<HTMLInputElement>('teacher-toggle').checked;
  const preset = currentPreset();
  let config = preset.config;
  if (preset.spacingSlider && config.kind === 'gkp') {
    const spacing = Number(el<HTMLInputElement>('spacing-slider').value);
    config = { ...config, lambda_v: spacing };
  }
  const client = new HttpPlaygroundClient('');
  controller = new LessonController(client, { ...preset, config }, 0, teacher);
  render(await controller.start());
}

function render(view: ReturnType<LessonController['view']>): void {
  el('instruction').textContent = view.finished
    ? 'Lesson complete. Reset to run it again, or pick the next preset.'
    : view.instruction;
  const diagram = view.lastEnvelope?.diagram;
  if (diagram) {
    el('diagram').innerHTML = drawDiagram(diagram);
    el('legend').textContent = legendLines(diagram).join('  ·  ');
  }
  el('narration').innerHTML = view.narrationLog
    .map((line) => `<li>${line.replace(/&/g, '&amp;').replace(/</g, '&lt;')}</li>`)
    .join('');
  const teacherView = view.lastEnvelope?.teacher_view;
  el('teacher-view').textContent = teacherView ? JSON.stringify(teacherView, null, 1) : '';
  for (const action of ALL_ACTIONS) {
    const button = el<HTMLButtonElement>(`action-${action}`);
    button.disabled = !view.allowed.includes(action) && action !== 'Reset';
  }
}

async function takeAction(action: SessionAction): Promise<void> {
  if (!controller) {
    return;
  }
  const payload = ACTION_PAYLOAD_PROMPTS[action]?.() ?? {};
  render(await controller.act(action, payload));
}

function wireUp(): void {
  const picker = el<HTMLSelectElement>('preset-picker');
  picker.innerHTML = PRESETS.map((p) => `<option value="${p.id}">${p.title}</option>`).join('');
  picker.addEventListener('change', () => {
    activePresetId = picker.value;
    el<HTMLDivElement>('slider-row').style.display = currentPreset().spacingSlider
      ? 'block'
      : 'none';
    void startLesson();
  });
  el<HTMLButtonElement>('start-button').addEventListener('click', () => void startLesson());
  el<HTMLButtonElement>('guess-button').addEventListener('click', () => {
    if (controller) {
      const guess = Number(el<HTMLInputElement>('guess-input').value);
      render(controller.recordGuess(guess));
    }
  });
  const slider = el<HTMLInputElement>('spacing-slider');
  slider.addEventListener('input', () => {
    const lambdaV = Number(slider.value);
    el('slider-readout').textContent =
      `vertical ${lambdaV.toFixed(3)} · horizontal ${(Math.PI / lambdaV).toFixed(3)} (product fixed at pi)`;
  });
  for (const action of ALL_ACTIONS) {
    el<HTMLButtonElement>(`action-${action}`).addEventListener(
      'click',
      () => void takeAction(action),
    );
  }
  void startLesson();
}

document.addEventListener('DOMContentLoaded', wireUp);
