// Bootstrap: read the service base URL and session id from the query string
// (creating a session when none is given), then mount the controller.

import { Client, type Condition } from './api';
import { DashboardController } from './app';
import { el } from './panels';

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get('service') ?? 'http://127.0.0.1:8000';
  const client = new Client(baseUrl);
  const root = document.getElementById('dashboard');
  if (!root) throw new Error('missing #dashboard mount point');

  let sessionId = params.get('session');
  if (!sessionId) {
    const condition = (params.get('condition') ?? 'Explainable') as Condition;
    const created = await client.createSession(condition);
    sessionId = created.session_id;
    const link = new URL(window.location.href);
    link.searchParams.set('session', sessionId);
    window.history.replaceState(null, '', link.toString());
  }

  const controller = new DashboardController(client, root, sessionId);

  const toolbar = el('div', { class: 'toolbar' });
  for (const [label, handler] of [
    ['Start writing', () => controller.advance('Performance')],
    ['Evaluate progress', () => controller.evaluate('progress')],
    ['Evaluate dialogue', () => controller.evaluate('dialogue')],
    ['Finish writing', () => controller.advance('Reflection')],
    ['Reflect', () => controller.evaluate('reflection')],
    ['Judge abstract', () => controller.evaluate('rubric')],
  ] as Array<[string, () => Promise<void>]>) {
    const button = el('button', {}, label);
    button.addEventListener('click', () => void handler());
    toolbar.appendChild(button);
  }
  root.appendChild(toolbar);

  const draftZone = el('div', { class: 'zone zone-draft' });
  const draft = el('textarea', { class: 'draft-editor', rows: '12', placeholder: 'Write your abstract here' }) as HTMLTextAreaElement;
  const save = el('button', { class: 'save-draft' }, 'Save draft');
  save.addEventListener('click', () => {
    void client.saveDraft(sessionId as string, draft.value).then(() => controller.refresh());
  });
  draftZone.append(el('h3', {}, 'Draft'), draft, save);
  root.appendChild(draftZone);

  await controller.refresh();
}

void boot();
