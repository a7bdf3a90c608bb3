// DOM builders for the dashboard panels. Chart panels take an optional
// onExplain callback; when it is absent (the visual-only condition) no
// clickable affordance is created at all.

import type { DialogueBar, ExplanationPayload, ProgressBar } from './api';
import type { DashboardViewModel } from './model';

type Child = Node | string;

export function el(tag: string, attrs: Record<string, string> = {}, ...children: Child[]): HTMLElement {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  for (const child of children) node.append(child);
  return node;
}

function bar(widthPct: number, cls: string): HTMLElement {
  const track = el('div', { class: 'bar-track' });
  const fill = el('div', { class: `bar-fill ${cls}` });
  fill.style.width = `${Math.max(0, Math.min(100, widthPct))}%`;
  track.appendChild(fill);
  return track;
}

function metricRow(
  label: string,
  value: number,
  widthPct: number,
  cls: string,
  metric: string,
  onExplain?: (metric: string) => void,
): HTMLElement {
  const row = el('div', { class: 'metric-row', 'data-metric': metric });
  if (onExplain) {
    const button = el('button', { class: 'explain-affordance', title: 'Why this score?' }, label);
    button.addEventListener('click', () => onExplain(metric));
    row.appendChild(button);
  } else {
    row.appendChild(el('span', { class: 'metric-label' }, label));
  }
  row.appendChild(bar(widthPct, cls));
  row.appendChild(el('span', { class: 'metric-value' }, String(value)));
  return row;
}

export function renderProgressBars(
  container: HTMLElement,
  bars: ProgressBar[] | null,
  onExplain?: (metric: string) => void,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', {}, 'Writing progress'));
  if (!bars) {
    container.appendChild(el('p', { class: 'placeholder' }, 'Not evaluated yet.'));
    return;
  }
  for (const b of bars) {
    container.appendChild(metricRow(b.label, b.percent, b.percent, 'progress', `progress.${b.key}`, onExplain));
  }
}

export function renderDialogueBars(
  container: HTMLElement,
  bars: DialogueBar[] | null,
  onExplain?: (metric: string) => void,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', {}, 'Dialogue quality'));
  if (!bars) {
    container.appendChild(el('p', { class: 'placeholder' }, 'Not evaluated yet.'));
    return;
  }
  for (const b of bars) {
    container.appendChild(metricRow(b.label, b.score, b.score, 'dialogue', `dialogue.${b.key}`, onExplain));
  }
}

export function renderTimeSummary(container: HTMLElement, vm: DashboardViewModel): void {
  container.innerHTML = '';
  if (vm.time) {
    const sign = vm.time.delta_min >= 0 ? '+' : '';
    container.append(
      el('span', {}, `Expected ${vm.time.expected_min} min`),
      el('span', {}, ` / actual ${vm.time.actual_min} min (${sign}${vm.time.delta_min})`),
    );
  } else if (vm.expectedTimeMin !== null) {
    container.append(el('span', {}, `Expected time: ${vm.expectedTimeMin} min`));
  }
}

export function renderErrorBanner(container: HTMLElement, code: string, detail: string): void {
  container.innerHTML = '';
  const banner = el('div', { class: 'error-banner', 'data-code': code }, `${code}: ${detail}`);
  container.appendChild(banner);
}

export function clearErrorBanner(container: HTMLElement): void {
  container.innerHTML = '';
}

/** The current selection, only if it falls entirely inside `root`; else ''. */
export function selectionWithin(root: Element, selection?: Selection | null): string {
  const sel = selection ?? (typeof window !== 'undefined' ? window.getSelection() : null);
  if (!sel || sel.isCollapsed || !sel.anchorNode || !sel.focusNode) return '';
  if (!root.contains(sel.anchorNode) || !root.contains(sel.focusNode)) return '';
  return sel.toString();
}

export interface ExplanationPanelHooks {
  onAsk: (selectedText: string, question: string) => void;
  onClose?: () => void;
  getSelection?: () => Selection | null;
}

/**
 * The drill-down panel: numbered reasoning steps in their original order,
 * then suggestions, then the follow-up thread. The ask control stays
 * disabled until a nonempty selection inside the panel body exists; the
 * posted text is exactly the selection string, byte for byte.
 */
export function renderExplanationPanel(
  container: HTMLElement,
  explanation: ExplanationPayload,
  hooks: ExplanationPanelHooks,
): void {
  container.innerHTML = '';
  const panel = el('section', { class: 'explanation-panel', 'data-metric': explanation.metric });
  panel.appendChild(el('h3', {}, `Why ${explanation.metric} was scored this way`));

  const body = el('div', { class: 'explanation-body' });
  const steps = el('ol', { class: 'reasoning-chain' });
  for (const step of explanation.reasoning_chain) steps.appendChild(el('li', {}, step));
  body.appendChild(steps);
  body.appendChild(el('h4', {}, 'Suggestions'));
  const suggestions = el('ul', { class: 'suggestions' });
  for (const s of explanation.suggestions) suggestions.appendChild(el('li', {}, s));
  body.appendChild(suggestions);
  panel.appendChild(body);

  const thread = el('div', { class: 'follow-up-thread' });
  for (const f of explanation.follow_ups) {
    thread.appendChild(
      el(
        'div',
        { class: 'follow-up-exchange' },
        el('blockquote', { class: 'selected-span' }, f.selected_text),
        el('p', { class: 'follow-up-question' }, `Q: ${f.question}`),
        el('p', { class: 'follow-up-answer' }, `A: ${f.answer}`),
      ),
    );
  }
  panel.appendChild(thread);

  const question = el('input', {
    class: 'follow-up-question-input',
    placeholder: 'Select text above, then ask about it',
  }) as HTMLInputElement;
  const ask = el('button', { class: 'ask-follow-up' }, 'Ask about selection') as HTMLButtonElement;
  ask.disabled = true;

  let captured = '';
  const refresh = () => {
    captured = selectionWithin(body, hooks.getSelection ? hooks.getSelection() : undefined);
    ask.disabled = captured.length === 0;
  };
  document.addEventListener('selectionchange', refresh);
  body.addEventListener('mouseup', refresh);

  ask.addEventListener('click', () => {
    refresh();
    if (!captured) return;
    hooks.onAsk(captured, question.value.trim() || 'Can you explain this part further?');
  });

  const controls = el('div', { class: 'follow-up-controls' });
  controls.append(question, ask);
  panel.appendChild(controls);

  if (hooks.onClose) {
    const close = el('button', { class: 'close-panel' }, 'Close');
    close.addEventListener('click', hooks.onClose);
    panel.appendChild(close);
  }
  container.appendChild(panel);
}

export function renderGoalEditor(
  container: HTMLElement,
  references: Record<string, string>,
  labels: Array<{ key: string; label: string }>,
  onSubmit: (goals: Record<string, number>, expectedTimeMin: number) => void,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', {}, 'Set your targets'));
  const inputs = new Map<string, HTMLInputElement>();
  for (const { key, label } of labels) {
    const input = el('input', { type: 'number', min: '0', max: '100', value: '70', 'data-goal': key }) as HTMLInputElement;
    inputs.set(key, input);
    const hint = references[key] ?? '';
    container.appendChild(el('label', { class: 'goal-field', title: hint }, `${label} `, input));
    if (hint) container.appendChild(el('p', { class: 'goal-reference' }, hint));
  }
  const time = el('input', { type: 'number', min: '1', value: '30', 'data-goal': 'expected_time_min' }) as HTMLInputElement;
  container.appendChild(el('label', { class: 'goal-field' }, 'Expected time (min) ', time));
  const submit = el('button', { class: 'submit-goals' }, 'Save goals');
  submit.addEventListener('click', () => {
    const goals: Record<string, number> = {};
    for (const [key, input] of inputs) goals[key] = Number(input.value);
    onSubmit(goals, Number(time.value));
  });
  container.appendChild(submit);
}

export function renderChatPanel(
  container: HTMLElement,
  history: Array<{ role: string; text: string }>,
  onSend: (message: string) => void,
): void {
  container.innerHTML = '';
  container.appendChild(el('h3', {}, 'Writing assistant'));
  const log = el('div', { class: 'chat-log' });
  for (const turn of history) {
    log.appendChild(el('p', { class: `chat-turn chat-${turn.role}` }, `${turn.role}: ${turn.text}`));
  }
  container.appendChild(log);
  const input = el('input', { class: 'chat-input', placeholder: 'Ask the assistant' }) as HTMLInputElement;
  const send = el('button', { class: 'chat-send' }, 'Send');
  send.addEventListener('click', () => {
    if (input.value.trim()) onSend(input.value);
  });
  container.append(input, send);
}
