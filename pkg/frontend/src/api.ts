// Typed client over the session service HTTP JSON API. Every number the UI
// renders comes from one of these payloads; the client fabricates nothing.

export type Condition = 'Explainable' | 'VisualOnly';

export interface RadarDimension {
  key: string;
  label: string;
  target?: number;
  actual?: number;
  delta?: number;
}

export interface ProgressBar {
  key: string;
  label: string;
  percent: number;
}

export interface DialogueBar {
  key: string;
  label: string;
  score: number;
}

export interface TimeSummary {
  expected_min: number;
  actual_min: number;
  delta_min: number;
}

export interface DashboardPayload {
  session_id: string;
  condition: Condition;
  phase: string;
  explainable: boolean;
  goal_references: Record<string, string>;
  goals?: { expected_time_min: number; targets: Record<string, number> };
  radar: RadarDimension[];
  overlay?: Record<string, number>;
  time?: TimeSummary;
  progress?: { evaluated_at: string; bars: ProgressBar[] };
  dialogue?: { window: number[]; bars: DialogueBar[] };
  explanations_available?: string[];
}

export interface FollowUpPayload {
  selected_text: string;
  question: string;
  answer: string;
  asked_at: string;
}

export interface ExplanationPayload {
  metric: string;
  reasoning_chain: string[];
  suggestions: string[];
  follow_ups: FollowUpPayload[];
}

export interface GoalsBody {
  expected_time_min: number;
  logical_coherence: number;
  expression_accuracy: number;
  structure_completeness: number;
  content_understanding: number;
}

export interface RubricResult {
  levels: Record<string, number>;
  total: number;
  explanations_available?: string[];
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = 'ApiError';
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { 'Content-Type': 'application/json' } };
    if (body !== undefined) init.body = JSON.stringify(body);
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (err) {
      throw new ApiError('Unreachable', 0, String(err));
    }
    if (!response.ok) {
      let code = `HTTP${response.status}`;
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { error?: string; detail?: unknown };
        if (parsed.error) code = parsed.error;
        if (parsed.detail) detail = typeof parsed.detail === 'string' ? parsed.detail : JSON.stringify(parsed.detail);
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(code, response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(condition: Condition): Promise<{ session_id: string; condition: string; phase: string }> {
    return this.request('POST', '/sessions', { condition });
  }

  setGoals(sessionId: string, goals: GoalsBody): Promise<GoalsBody> {
    return this.request('PUT', `/sessions/${sessionId}/goals`, goals);
  }

  advancePhase(sessionId: string, target: string): Promise<{ phase: string }> {
    return this.request('POST', `/sessions/${sessionId}/advance-phase`, { target });
  }

  saveDraft(sessionId: string, text: string): Promise<{ version: number; saved_at: string }> {
    return this.request('PUT', `/sessions/${sessionId}/draft`, { text });
  }

  chat(sessionId: string, message: string): Promise<{ reply: string }> {
    return this.request('POST', `/sessions/${sessionId}/chat`, { message });
  }

  evaluateProgress(sessionId: string): Promise<{ bars: ProgressBar[] }> {
    return this.request('POST', `/sessions/${sessionId}/evaluate/progress`);
  }

  evaluateDialogue(sessionId: string): Promise<{ window: number[]; bars: DialogueBar[] }> {
    return this.request('POST', `/sessions/${sessionId}/evaluate/dialogue`);
  }

  evaluateReflection(sessionId: string): Promise<{ scores: Record<string, number>; overlay: Record<string, number>; time: TimeSummary }> {
    return this.request('POST', `/sessions/${sessionId}/evaluate/reflection`);
  }

  evaluateRubric(sessionId: string): Promise<RubricResult> {
    return this.request('POST', `/sessions/${sessionId}/evaluate/rubric`);
  }

  dashboard(sessionId: string): Promise<DashboardPayload> {
    return this.request('GET', `/sessions/${sessionId}/dashboard`);
  }

  explanation(sessionId: string, metric: string): Promise<ExplanationPayload> {
    return this.request('GET', `/sessions/${sessionId}/explanation/${metric}`);
  }

  followUp(sessionId: string, metric: string, selectedText: string, question: string): Promise<FollowUpPayload> {
    return this.request('POST', `/sessions/${sessionId}/follow-up`, {
      metric,
      selected_text: selectedText,
      question,
    });
  }
}
