// View model assembly: reshapes one dashboard payload for rendering.
// Invariants the tests pin down: the actual radar series stays absent until
// reflection scores exist, and explanation affordances exist only in the
// explainable condition.

import type { DashboardPayload, DialogueBar, ProgressBar, TimeSummary } from './api';

export interface RadarViewModel {
  keys: string[];
  labels: string[];
  target: number[] | null;
  actual: number[] | null;
}

export interface DashboardViewModel {
  sessionId: string;
  condition: string;
  phase: string;
  explainable: boolean;
  goalReferences: Record<string, string>;
  expectedTimeMin: number | null;
  radar: RadarViewModel;
  overlay: Record<string, number> | null;
  time: TimeSummary | null;
  progressBars: ProgressBar[] | null;
  dialogueBars: DialogueBar[] | null;
  dialogueWindow: number[];
  clickableMetrics: Set<string>;
}

export function buildViewModel(payload: DashboardPayload): DashboardViewModel {
  const targets = payload.radar.map((d) => d.target);
  const actuals = payload.radar.map((d) => d.actual);
  const hasTargets = targets.every((v) => typeof v === 'number');
  const hasActuals = actuals.every((v) => typeof v === 'number');
  return {
    sessionId: payload.session_id,
    condition: payload.condition,
    phase: payload.phase,
    explainable: payload.explainable,
    goalReferences: payload.goal_references,
    expectedTimeMin: payload.goals ? payload.goals.expected_time_min : null,
    radar: {
      keys: payload.radar.map((d) => d.key),
      labels: payload.radar.map((d) => d.label),
      target: hasTargets ? (targets as number[]) : null,
      actual: hasActuals ? (actuals as number[]) : null,
    },
    overlay: payload.overlay ?? null,
    time: payload.time ?? null,
    progressBars: payload.progress ? payload.progress.bars : null,
    dialogueBars: payload.dialogue ? payload.dialogue.bars : null,
    dialogueWindow: payload.dialogue ? payload.dialogue.window : [],
    clickableMetrics: payload.explainable
      ? new Set(payload.explanations_available ?? [])
      : new Set<string>(),
  };
}
