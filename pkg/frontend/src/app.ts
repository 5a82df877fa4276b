/**
 * Lesson controller: drives one session through a preset's prompts.
 *
 * The controller holds no quantum state of its own. It remembers the
 * session id, the ordered list of actions taken (so a reload can replay
 * them), and presentation bookkeeping like the learner's pre-decode guess.
 */

import type {
  PlaygroundClient,
  SessionAction,
  SessionEnvelope,
} from './protocol';
import type { LessonPreset } from './presets';

export interface TakenAction {
  action: SessionAction;
  payload: Record<string, unknown>;
}

export interface LessonView {
  sessionId: string | null;
  promptIndex: number;
  instruction: string;
  allowed: SessionAction[];
  narrationLog: string[];
  lastEnvelope: SessionEnvelope | null;
  guess: number | null;
  guessOutcome: string | null;
  finished: boolean;
}

export class LessonController {
  private sessionId: string | null = null;
  private promptIndex = 0;
  private narrationLog: string[] = [];
  private lastEnvelope: SessionEnvelope | null = null;
  private actionsTaken: TakenAction[] = [];
  private guess: number | null = null;
  private guessOutcome: string | null = null;

  constructor(
    private readonly client: PlaygroundClient,
    readonly preset: LessonPreset,
    private readonly seed: number = 0,
    private readonly teacherMode: boolean = false,
  ) {}

  async start(): Promise<LessonView> {
    const envelope = await this.client.create(this.preset.config, this.seed, this.teacherMode);
    if (envelope.error) {
      throw new Error(`${envelope.error.code}: ${envelope.error.message}`);
    }
    this.sessionId = envelope.session_id ?? null;
    this.promptIndex = 0;
    this.narrationLog = envelope.narration ? [envelope.narration] : [];
    this.lastEnvelope = envelope;
    this.actionsTaken = [];
    this.guess = null;
    this.guessOutcome = null;
    return this.view();
  }

  view(): LessonView {
    const prompt = this.preset.prompts[Math.min(this.promptIndex, this.preset.prompts.length - 1)];
    return {
      sessionId: this.sessionId,
      promptIndex: this.promptIndex,
      instruction: prompt.instruction,
      allowed: prompt.allowed,
      narrationLog: [...this.narrationLog],
      lastEnvelope: this.lastEnvelope,
      guess: this.guess,
      guessOutcome: this.guessOutcome,
      finished: this.promptIndex >= this.preset.prompts.length,
    };
  }

  /** The learner's pre-decode commitment (preset 4's what-if moment):
   *  which displacement do you think caused the syndrome? */
  recordGuess(displacement: number): LessonView {
    this.guess = displacement;
    this.narrationLog.push(`you guessed the error was a shift of ${formatSigned(displacement)}`);
    return this.view();
  }

  async act(action: SessionAction, payload: Record<string, unknown> = {}): Promise<LessonView> {
    if (!this.sessionId) {
      throw new Error('lesson not started');
    }
    const prompt = this.preset.prompts[Math.min(this.promptIndex, this.preset.prompts.length - 1)];
    if (!prompt.allowed.includes(action) && action !== 'Reset') {
      throw new Error(`action ${action} is not part of this step`);
    }
    const envelope = await this.client.step(this.sessionId, action, payload);
    this.lastEnvelope = envelope;
    if (envelope.error) {
      this.narrationLog.push(`error: ${envelope.error.message}`);
      return this.view();
    }
    if (envelope.narration) {
      this.narrationLog.push(envelope.narration);
    }
    this.actionsTaken.push({ action, payload });
    if (action === 'Reset') {
      this.promptIndex = 0;
      this.guess = null;
      this.guessOutcome = null;
      this.actionsTaken = [];
    } else {
      this.compareGuess(action, envelope);
      this.maybeAdvance(action);
    }
    return this.view();
  }

  private compareGuess(action: SessionAction, envelope: SessionEnvelope): void {
    if (action !== 'StepDecoder' || this.guess === null || !envelope.payload) {
      return;
    }
    const correction = envelope.payload['correction'];
    if (typeof correction !== 'number') {
      return;
    }
    // the decoder's correction c undoes a believed displacement of -c
    const agrees = this.guess === -correction;
    this.guessOutcome = agrees
      ? `the decoder agrees: it undid a shift of ${formatSigned(this.guess)}`
      : `the decoder disagrees: it assumed a shift of ${formatSigned(-correction)}`;
    this.narrationLog.push(this.guessOutcome);
  }

  private maybeAdvance(action: SessionAction): void {
    if (this.promptIndex >= this.preset.prompts.length) {
      return;
    }
    const prompt = this.preset.prompts[this.promptIndex];
    // the first listed action is the prompt's goal; performing it advances
    if (prompt.allowed[0] === action) {
      this.promptIndex += 1;
    }
  }

  /** Reload path: rebuild the identical view from the recorded action log. */
  async replay(): Promise<LessonView> {
    const log = [...this.actionsTaken];
    await this.start();
    for (const entry of log) {
      await this.act(entry.action, entry.payload);
    }
    return this.view();
  }
}

function formatSigned(value: number): string {
  return value >= 0 ? `+${value}` : `${value}`;
}
