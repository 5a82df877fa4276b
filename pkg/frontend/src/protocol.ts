/**
 * Types and client for the "shiftsim/1" JSON lesson protocol.
 *
 * The browser never re-derives any decoding or measurement result: every
 * verdict shown in the UI comes out of a session envelope.
 */

export const PROTOCOL_VERSION = 'shiftsim/1';

// ---------------------------------------------------------------------------
// Protocol types
// ---------------------------------------------------------------------------

export interface DiagramCell {
  position: number[];
  shaded: boolean;
  codespace: boolean;
  label: string;
}

export interface DiagramAnnotation {
  text: string;
  anchor: number[];
}

export interface DiagramModel {
  kind: 'ladder' | 'grid' | 'continuous_axis' | 'continuous_plane';
  cells: DiagramCell[];
  annotations: DiagramAnnotation[];
  legend: string[];
}

export interface ErrorInfo {
  code: string;
  message: string;
}

export interface SessionEnvelope {
  protocol_version: string;
  session_id?: string;
  action: string;
  payload?: Record<string, unknown>;
  narration?: string;
  diagram?: DiagramModel;
  teacher_view?: Record<string, unknown>;
  error?: ErrorInfo;
}

export interface LadderConfig {
  kind: 'ladder';
  num_levels: number;
  spacing: number;
  boundary?: 'cyclic' | 'hard';
  alpha?: [number, number];
  beta?: [number, number];
}

export interface PlanarConfig {
  kind: 'planar';
  v_levels: number;
  v_spacing: number;
  h_levels: number;
  h_spacing: number;
  boundary?: 'cyclic' | 'hard';
  alpha?: [number, number];
  beta?: [number, number];
}

export interface GkpConfig {
  kind: 'gkp';
  lambda_v: number;
  alpha?: [number, number];
  beta?: [number, number];
}

export type CodeConfig = LadderConfig | PlanarConfig | GkpConfig;

export type SessionAction =
  | 'GetState'
  | 'InjectShift'
  | 'MeasureSyndrome'
  | 'StepDecoder'
  | 'MeasureLogical'
  | 'CandidateErrors'
  | 'Reset';

// ---------------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------------

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface PlaygroundClient {
  health(): Promise<{ protocol_version: string; status: string }>;
  create(config: CodeConfig, seed: number, teacherMode: boolean): Promise<SessionEnvelope>;
  step(sessionId: string, action: SessionAction, payload?: Record<string, unknown>): Promise<SessionEnvelope>;
  state(sessionId: string): Promise<SessionEnvelope>;
  reset(sessionId: string): Promise<SessionEnvelope>;
}

export class HttpPlaygroundClient implements PlaygroundClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post(path: string, body?: unknown): Promise<SessionEnvelope> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    // protocol errors still arrive as envelopes; surface them to the caller
    return (await response.json()) as SessionEnvelope;
  }

  async health(): Promise<{ protocol_version: string; status: string }> {
    const response = await this.fetchImpl(`${this.baseUrl}/health`);
    return (await response.json()) as { protocol_version: string; status: string };
  }

  create(config: CodeConfig, seed: number, teacherMode: boolean): Promise<SessionEnvelope> {
    return this.post('/create', { config, seed, teacher_mode: teacherMode });
  }

  step(
    sessionId: string,
    action: SessionAction,
    payload: Record<string, unknown> = {},
  ): Promise<SessionEnvelope> {
    return this.post('/step', { session_id: sessionId, action, payload });
  }

  async state(sessionId: string): Promise<SessionEnvelope> {
    const response = await this.fetchImpl(`${this.baseUrl}/state/${sessionId}`);
    return (await response.json()) as SessionEnvelope;
  }

  reset(sessionId: string): Promise<SessionEnvelope> {
    return this.post(`/reset/${sessionId}`);
  }
}
