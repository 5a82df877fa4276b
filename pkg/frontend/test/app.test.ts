import { describe, expect, it } from 'vitest';

import { LessonController } from '../src/app';
import { presetById } from '../src/presets';
import type {
  CodeConfig,
  DiagramModel,
  PlaygroundClient,
  SessionAction,
  SessionEnvelope,
} from '../src/protocol';

/**
 * Scripted stand-in for the live service, reproducing the envelope values
 * the real backend returns for the five-level "mod 4 = 2" lesson.
 */
class FakeClient implements PlaygroundClient {
  requests: Array<{ action: string; payload: Record<string, unknown> }> = [];
  private counter = 0;

  private diagram(shadedLevels: number[]): DiagramModel {
    return {
      kind: 'ladder',
      cells: [0, 1, 2, 3, 4].map((level) => ({
        position: [level],
        shaded: shadedLevels.includes(level),
        codespace: level === 0 || level === 4,
        label: String(level % 4),
      })),
      annotations: [],
      legend: ['0L peaks: 0', '1L peaks: 4'],
    };
  }

  async health() {
    return { protocol_version: 'shiftsim/1', status: 'ok' };
  }

  async create(_config: CodeConfig, _seed: number, _teacher: boolean): Promise<SessionEnvelope> {
    this.counter += 1;
    return {
      protocol_version: 'shiftsim/1',
      session_id: `s${String(this.counter).padStart(6, '0')}`,
      action: 'Create',
      payload: { kind: 'ladder', seed: _seed, teacher_mode: _teacher },
      narration: 'encoded one qubit across 5 levels with peak spacing 4',
      diagram: this.diagram([0]),
    };
  }

  async step(
    sessionId: string,
    action: SessionAction,
    payload: Record<string, unknown> = {},
  ): Promise<SessionEnvelope> {
    this.requests.push({ action, payload });
    const base = { protocol_version: 'shiftsim/1', session_id: sessionId, action };
    switch (action) {
      case 'InjectShift':
        if (payload['amount'] === 99) {
          return {
            ...base,
            error: { code: 'out_of_range_shift', message: 'shift +99 leaves the ladder' },
          };
        }
        return {
          ...base,
          payload: { injected: payload['amount'] },
          narration: 'injected shift +2; only a measurement can reveal anything now',
          diagram: this.diagram([]),
        };
      case 'MeasureSyndrome':
        return {
          ...base,
          payload: { syndrome: 2, candidates: [2] },
          narration: 'syndrome 2: several errors could explain it (levels 2)',
          diagram: this.diagram([2]),
        };
      case 'StepDecoder':
        return {
          ...base,
          payload: { syndrome: 2, correction: -2 },
          narration: 'corrected -2; state back in the code space',
          diagram: this.diagram([0, 4]),
        };
      case 'MeasureLogical':
        return {
          ...base,
          payload: { bit: 0 },
          narration: 'measured logical 0; the outcome is fixed now, repeats return 0',
          diagram: this.diagram([0]),
        };
      case 'Reset':
        return {
          ...base,
          payload: { kind: 'ladder' },
          narration: 'session reset to the freshly encoded state',
          diagram: this.diagram([0]),
        };
      default:
        return { ...base, error: { code: 'invalid_action', message: `no ${action}` } };
    }
  }

  async state(sessionId: string): Promise<SessionEnvelope> {
    return {
      protocol_version: 'shiftsim/1',
      session_id: sessionId,
      action: 'GetState',
      payload: { kind: 'ladder' },
      diagram: this.diagram([0]),
    };
  }

  reset(sessionId: string): Promise<SessionEnvelope> {
    return this.step(sessionId, 'Reset');
  }
}

const LESSON = presetById('quantum-decoding');

describe('LessonController', () => {
  it('starts a session and surfaces the first prompt', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    const view = await controller.start();
    expect(view.sessionId).toBe('s000001');
    expect(view.promptIndex).toBe(0);
    expect(view.instruction).toContain('Inject a shift of +2');
    expect(view.allowed).toEqual(['InjectShift']);
    expect(view.narrationLog).toHaveLength(1);
  });

  it('advances prompts as the named action is performed', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    await controller.start();
    let view = await controller.act('InjectShift', { amount: 2 });
    expect(view.promptIndex).toBe(1);
    expect(view.allowed).toContain('MeasureSyndrome');
    view = await controller.act('MeasureSyndrome');
    expect(view.promptIndex).toBe(2);
    view = await controller.act('StepDecoder');
    expect(view.finished).toBe(true);
  });

  it('refuses actions outside the current prompt', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    await controller.start();
    await expect(controller.act('StepDecoder')).rejects.toThrow(/not part of this step/);
  });

  it('compares the committed guess against the decoder verdict', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    await controller.start();
    await controller.act('InjectShift', { amount: 2 });
    await controller.act('MeasureSyndrome');
    controller.recordGuess(2);
    const view = await controller.act('StepDecoder');
    // correction -2 undoes a believed shift of +2: the guess matches
    expect(view.guessOutcome).toContain('decoder agrees');
    expect(view.narrationLog.some((l) => l.includes('you guessed'))).toBe(true);
  });

  it('flags a guess the decoder overrules', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    await controller.start();
    await controller.act('InjectShift', { amount: 2 });
    await controller.act('MeasureSyndrome');
    controller.recordGuess(-2);
    const view = await controller.act('StepDecoder');
    expect(view.guessOutcome).toContain('decoder disagrees');
  });

  it('keeps no state beyond the session: replay rebuilds the same view', async () => {
    const client = new FakeClient();
    const controller = new LessonController(client, LESSON);
    await controller.start();
    await controller.act('InjectShift', { amount: 2 });
    await controller.act('MeasureSyndrome');
    const before = controller.view();
    const after = await controller.replay();
    expect(after.promptIndex).toBe(before.promptIndex);
    expect(after.instruction).toBe(before.instruction);
    expect(after.lastEnvelope?.diagram).toEqual(before.lastEnvelope?.diagram);
    expect(after.narrationLog).toEqual(before.narrationLog);
  });

  it('surfaces protocol errors in the narration without advancing', async () => {
    const client = new FakeClient();
    const controller = new LessonController(client, LESSON);
    await controller.start();
    const view = await controller.act('InjectShift', { amount: 99 });
    expect(view.promptIndex).toBe(0);
    expect(view.narrationLog[view.narrationLog.length - 1]).toContain('error:');
  });

  it('reset returns to the first prompt and clears the guess', async () => {
    const controller = new LessonController(new FakeClient(), LESSON);
    await controller.start();
    await controller.act('InjectShift', { amount: 2 });
    controller.recordGuess(2);
    const view = await controller.act('Reset');
    expect(view.promptIndex).toBe(0);
    expect(view.guess).toBeNull();
    expect(view.finished).toBe(false);
  });
});
