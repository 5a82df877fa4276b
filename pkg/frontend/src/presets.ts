/**
 * Guided lesson presets.
 *
 * Seven stations walk from the two-level encoding to the continuous
 * square-lattice code. Each prompt names the actions the learner may take
 * at that point; everything else stays disabled so the story unfolds in
 * order. Suggested minutes are guidance only.
 */

import type { CodeConfig, SessionAction } from './protocol';

export interface LessonPrompt {
  instruction: string;
  allowed: SessionAction[];
}

export interface LessonPreset {
  id: string;
  title: string;
  config: CodeConfig;
  suggestedMinutes: number;
  prompts: LessonPrompt[];
  /** preset 4's what-if moment: ask for a guess before stepping the decoder */
  askForGuess?: boolean;
  /** preset 7 exposes the spacing slider (the product of spacings is fixed) */
  spacingSlider?: boolean;
}

const SQRT_PI = Math.sqrt(Math.PI);

export const PRESETS: LessonPreset[] = [
  {
    id: 'two-level',
    title: '1. Two levels: one shift is already fatal',
    config: { kind: 'ladder', num_levels: 2, spacing: 1, boundary: 'cyclic' },
    suggestedMinutes: 12,
    prompts: [
      {
        instruction:
          'This qubit lives on two levels. Inject a single shift and watch both logical values trade places.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Measure the logical bit. With no padding, that one shift already flipped the stored value.',
        allowed: ['MeasureLogical', 'Reset'],
      },
    ],
  },
  {
    id: 'padding-detection',
    title: '2. Padding makes errors detectable',
    config: { kind: 'ladder', num_levels: 3, spacing: 2, boundary: 'hard' },
    suggestedMinutes: 12,
    prompts: [
      {
        instruction:
          'Now an empty level separates the two codewords. Inject a shift of +1 or -1.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Measure the syndrome (level mod 2). A nonzero value flags the error without touching the stored qubit.',
        allowed: ['MeasureSyndrome', 'CandidateErrors', 'Reset'],
      },
    ],
  },
  {
    id: 'four-level-correction',
    title: '3. More padding makes errors correctable',
    config: { kind: 'ladder', num_levels: 4, spacing: 3, boundary: 'hard' },
    suggestedMinutes: 15,
    prompts: [
      {
        instruction:
          'Two padding levels now sit between the codewords. Inject a single shift.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Measure the syndrome, then let the decoder slide the amplitude back to the nearest codeword.',
        allowed: ['MeasureSyndrome', 'CandidateErrors', 'StepDecoder', 'Reset'],
      },
    ],
  },
  {
    id: 'quantum-decoding',
    title: '4. Decoding with sticky measurements',
    config: { kind: 'ladder', num_levels: 5, spacing: 4, boundary: 'hard' },
    suggestedMinutes: 18,
    askForGuess: true,
    prompts: [
      {
        instruction: 'Inject a shift of +2 on this five-level ladder.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'The syndrome says: active level mod 4 = 2. Which error caused it? Pick your candidate before the decoder commits.',
        allowed: ['MeasureSyndrome', 'CandidateErrors'],
      },
      {
        instruction:
          'Step the decoder and compare its correction with your guess. Then measure the logical bit twice: the second outcome is locked to the first.',
        allowed: ['StepDecoder', 'MeasureLogical', 'Reset'],
      },
    ],
  },
  {
    id: 'two-axis',
    title: '5. A second error type needs a second axis',
    config: {
      kind: 'planar',
      v_levels: 12,
      v_spacing: 3,
      h_levels: 16,
      h_spacing: 4,
      boundary: 'cyclic',
    },
    suggestedMinutes: 16,
    prompts: [
      {
        instruction:
          'Phase errors slide the state horizontally, shift errors vertically. Inject a displacement on each axis.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Each axis carries its own syndrome and is decoded independently. Measure, then step the decoder.',
        allowed: ['MeasureSyndrome', 'CandidateErrors', 'StepDecoder', 'Reset'],
      },
    ],
  },
  {
    id: 'multi-peak',
    title: '6. Uncertainty forces multi-peak codewords',
    config: { kind: 'ladder', num_levels: 10, spacing: 3, boundary: 'hard' },
    suggestedMinutes: 22,
    prompts: [
      {
        instruction:
          'Each codeword is now spread over several peaks: |0L> on levels 0 and 6, |1L> on 3 and 9. Inject a shift of +2.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Measure the syndrome. Three different errors could explain the outcome; list them.',
        allowed: ['MeasureSyndrome', 'CandidateErrors'],
      },
      {
        instruction:
          'Step the decoder. Was the most likely error the real one? Toggle teacher view to find out.',
        allowed: ['StepDecoder', 'MeasureLogical', 'Reset'],
      },
    ],
  },
  {
    id: 'continuous',
    title: '7. Infinite levels: the continuous lattice code',
    config: { kind: 'gkp', lambda_v: SQRT_PI },
    suggestedMinutes: 25,
    spacingSlider: true,
    prompts: [
      {
        instruction:
          'The ladder is now a real line with peaks every lambda. Drag the spacing slider: widening one axis tightens the other, their product is fixed.',
        allowed: ['InjectShift'],
      },
      {
        instruction:
          'Inject a small displacement (less than half a spacing) and decode: the state returns exactly.',
        allowed: ['MeasureSyndrome', 'StepDecoder', 'Reset'],
      },
      {
        instruction:
          'Now inject more than half a spacing and decode again: the correction lands on the wrong peak, a silent logical flip.',
        allowed: ['InjectShift', 'MeasureSyndrome', 'StepDecoder', 'MeasureLogical', 'Reset'],
      },
    ],
  },
];

export function presetById(id: string): LessonPreset {
  const preset = PRESETS.find((p) => p.id === id);
  if (!preset) {
    throw new Error(`unknown preset: ${id}`);
  }
  return preset;
}
