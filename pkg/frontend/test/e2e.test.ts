// Full-stack run against the real session service backed by its scripted
// judge: boots the server once, drives an explainable session and a
// visual-only session through the typed client, and renders the results.

import { spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiError, Client } from '../src/api';
import { buildViewModel } from '../src/model';
import { renderProgressBars } from '../src/panels';
import { renderRadar } from '../src/radar';

const HERE = dirname(fileURLToPath(import.meta.url));
const PORT = 8765 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;
const MOCK_SCRIPT = join(HERE, '..', '..', 'demo', 'mock_script.json');

let server: ChildProcess;
let dataDir: string;

const GOALS = {
  expected_time_min: 30,
  logical_coherence: 80,
  expression_accuracy: 70,
  structure_completeness: 60,
  content_understanding: 90,
};

async function waitForServer(): Promise<void> {
  const deadline = Date.now() + 20000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/healthz`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error('service did not come up');
}

async function runSession(client: Client, condition: 'Explainable' | 'VisualOnly'): Promise<string> {
  const { session_id } = await client.createSession(condition);
  await client.setGoals(session_id, GOALS);
  await client.advancePhase(session_id, 'Performance');
  const draft = Array.from({ length: 260 }, (_, i) => `w${i}`).join(' ');
  await client.saveDraft(session_id, draft);
  await client.chat(session_id, 'how should I open the abstract?');
  await client.evaluateProgress(session_id);
  await client.evaluateDialogue(session_id);
  await client.advancePhase(session_id, 'Reflection');
  await client.evaluateReflection(session_id);
  return session_id;
}

beforeAll(async () => {
  dataDir = mkdtempSync(join(tmpdir(), 'writeboard-e2e-'));
  server = spawn(
    'python3',
    ['-m', 'writeboard.service.cli', 'serve', '--port', String(PORT), '--data-dir', dataDir, '--mock', MOCK_SCRIPT],
    { stdio: 'ignore' },
  );
  await waitForServer();
});

afterAll(() => {
  server?.kill();
  rmSync(dataDir, { recursive: true, force: true });
});

describe('explainable session against the live service', () => {
  it('renders both radar series after reflection', async () => {
    const client = new Client(BASE);
    const sid = await runSession(client, 'Explainable');
    const vm = buildViewModel(await client.dashboard(sid));

    expect(vm.radar.target).toEqual([80, 70, 60, 90]);
    expect(vm.radar.actual).toEqual([70, 65, 80, 75]);
    const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    renderRadar(svg, vm.radar);
    expect(svg.querySelectorAll('.series-target')).toHaveLength(1);
    expect(svg.querySelectorAll('.series-actual')).toHaveLength(1);

    // overlay deltas come back precomputed and equal actual minus target
    vm.radar.keys.forEach((key, i) => {
      expect(vm.overlay?.[key]).toBe(vm.radar.actual![i]! - vm.radar.target![i]!);
    });
  });

  it('drills into an explanation and round-trips a byte-identical follow-up selection', async () => {
    const client = new Client(BASE);
    const sid = await runSession(client, 'Explainable');

    const explanation = await client.explanation(sid, 'progress.Method');
    expect(explanation.reasoning_chain.length).toBeGreaterThanOrEqual(1);
    expect(explanation.suggestions.length).toBeGreaterThanOrEqual(1);

    const span = explanation.reasoning_chain[0]!.slice(4, 27);
    const exchange = await client.followUp(sid, 'progress.Method', span, 'what would raise this?');
    expect(exchange.selected_text).toBe(span);

    const again = await client.explanation(sid, 'progress.Method');
    expect(again.follow_ups).toHaveLength(1);
    expect(again.follow_ups[0]!.selected_text).toBe(span);
    expect(again.follow_ups[0]!.answer.length).toBeGreaterThan(0);
  });

  it('exposes an explanation for every scored metric', async () => {
    const client = new Client(BASE);
    const sid = await runSession(client, 'Explainable');
    await client.evaluateRubric(sid);
    const vm = buildViewModel(await client.dashboard(sid));
    expect(vm.clickableMetrics.size).toBe(5 + 4 + 4 + 7);
    for (const metric of vm.clickableMetrics) {
      const explanation = await client.explanation(sid, metric);
      expect(explanation.reasoning_chain.length).toBeGreaterThanOrEqual(1);
    }
  });
});

describe('visual-only session against the live service', () => {
  it('renders charts without affordances and surfaces ExplainabilityDisabled when forced', async () => {
    const client = new Client(BASE);
    const sid = await runSession(client, 'VisualOnly');
    const payload = await client.dashboard(sid);
    expect(payload.explainable).toBe(false);
    expect(payload.explanations_available).toBeUndefined();

    const vm = buildViewModel(payload);
    expect(vm.clickableMetrics.size).toBe(0);
    document.body.innerHTML = '<div id="root"></div>';
    const root = document.getElementById('root') as HTMLElement;
    renderProgressBars(root, vm.progressBars, undefined);
    expect(root.querySelectorAll('.explain-affordance')).toHaveLength(0);
    expect(root.textContent).toContain('90'); // charts still show to the control group

    // a forced request bypassing the hidden UI still fails server-side
    const forced = await client
      .followUp(sid, 'progress.Method', 'anything', 'why?')
      .then(() => null)
      .catch((err: unknown) => err);
    expect(forced).toBeInstanceOf(ApiError);
    expect((forced as ApiError).code).toBe('ExplainabilityDisabled');
    expect((forced as ApiError).status).toBe(403);

    const forcedRead = await client
      .explanation(sid, 'progress.Method')
      .then(() => null)
      .catch((err: unknown) => err);
    expect((forcedRead as ApiError).code).toBe('ExplainabilityDisabled');
  });
});
