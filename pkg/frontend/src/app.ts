// Page controller: fetch state, render panels, route clicks back to the API.
// Affordance hiding here is cosmetic only; the service enforces the
// condition, and a forced request surfaces its error code in the banner.

import { ApiError, Client, type DashboardPayload, type ExplanationPayload } from './api';
import { buildViewModel, type DashboardViewModel } from './model';
import {
  clearErrorBanner,
  el,
  renderChatPanel,
  renderDialogueBars,
  renderErrorBanner,
  renderExplanationPanel,
  renderGoalEditor,
  renderProgressBars,
  renderTimeSummary,
} from './panels';
import { renderRadar } from './radar';

export interface ControllerOptions {
  getSelection?: () => Selection | null;
}

export class DashboardController {
  view: DashboardViewModel | null = null;
  private chatHistory: Array<{ role: string; text: string }> = [];

  constructor(
    private readonly client: Client,
    private readonly root: HTMLElement,
    readonly sessionId: string,
    private readonly options: ControllerOptions = {},
  ) {}

  private zone(name: string): HTMLElement {
    let node = this.root.querySelector<HTMLElement>(`[data-zone="${name}"]`);
    if (!node) {
      node = el('div', { 'data-zone': name, class: `zone zone-${name}` });
      this.root.appendChild(node);
    }
    return node;
  }

  async refresh(): Promise<void> {
    const payload: DashboardPayload = await this.client.dashboard(this.sessionId);
    this.view = buildViewModel(payload);
    this.render();
  }

  render(): void {
    const vm = this.view;
    if (!vm) return;
    clearErrorBanner(this.zone('errors'));

    const status = this.zone('status');
    status.innerHTML = '';
    status.append(
      el('span', { class: 'phase-chip' }, vm.phase),
      el('span', { class: 'condition-chip' }, vm.condition),
    );

    const explain = vm.explainable ? (metric: string) => void this.openExplanation(metric) : undefined;

    const radarZone = this.zone('radar');
    radarZone.innerHTML = '';
    radarZone.appendChild(el('h3', {}, 'Targets and results'));
    const svg = document.createElementNS('http://www.w3.org/2000/svg', 'svg');
    radarZone.appendChild(svg);
    renderRadar(svg, vm.radar);
    if (vm.explainable && vm.radar.actual) {
      const list = el('div', { class: 'reflection-links' });
      vm.radar.keys.forEach((key, i) => {
        const button = el('button', { class: 'explain-affordance' }, vm.radar.labels[i] ?? key);
        button.addEventListener('click', () => void this.openExplanation(`reflection.${key}`));
        list.appendChild(button);
      });
      radarZone.appendChild(list);
    }
    renderTimeSummary(this.zone('time'), vm);

    if (vm.phase === 'Forethought') {
      renderGoalEditor(
        this.zone('goals'),
        vm.goalReferences,
        vm.radar.keys.map((key, i) => ({ key, label: vm.radar.labels[i] ?? key })),
        (goals, expectedTimeMin) => void this.submitGoals(goals, expectedTimeMin),
      );
    } else {
      this.zone('goals').innerHTML = '';
    }

    renderProgressBars(this.zone('progress'), vm.progressBars, explain);
    renderDialogueBars(this.zone('dialogue'), vm.dialogueBars, explain);
    renderChatPanel(this.zone('chat'), this.chatHistory, (message) => void this.sendChat(message));
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError) {
      renderErrorBanner(this.zone('errors'), err.code, err.message);
    } else {
      renderErrorBanner(this.zone('errors'), 'Error', String(err));
    }
  }

  async submitGoals(goals: Record<string, number>, expectedTimeMin: number): Promise<void> {
    try {
      await this.client.setGoals(this.sessionId, {
        expected_time_min: expectedTimeMin,
        logical_coherence: goals['logical_coherence'] ?? 0,
        expression_accuracy: goals['expression_accuracy'] ?? 0,
        structure_completeness: goals['structure_completeness'] ?? 0,
        content_understanding: goals['content_understanding'] ?? 0,
      });
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  async openExplanation(metric: string): Promise<void> {
    try {
      const explanation: ExplanationPayload = await this.client.explanation(this.sessionId, metric);
      renderExplanationPanel(this.zone('explanation'), explanation, {
        onAsk: (selectedText, question) => void this.askFollowUp(metric, selectedText, question),
        onClose: () => {
          this.zone('explanation').innerHTML = '';
        },
        getSelection: this.options.getSelection,
      });
    } catch (err) {
      this.fail(err);
    }
  }

  async askFollowUp(metric: string, selectedText: string, question: string): Promise<void> {
    try {
      await this.client.followUp(this.sessionId, metric, selectedText, question);
      await this.openExplanation(metric); // re-render the panel with the new exchange
    } catch (err) {
      this.fail(err);
    }
  }

  async sendChat(message: string): Promise<void> {
    try {
      this.chatHistory.push({ role: 'student', text: message });
      const { reply } = await this.client.chat(this.sessionId, message);
      this.chatHistory.push({ role: 'assistant', text: reply });
      this.render();
    } catch (err) {
      this.fail(err);
    }
  }

  async evaluate(kind: 'progress' | 'dialogue' | 'reflection' | 'rubric'): Promise<void> {
    try {
      if (kind === 'progress') await this.client.evaluateProgress(this.sessionId);
      else if (kind === 'dialogue') await this.client.evaluateDialogue(this.sessionId);
      else if (kind === 'reflection') await this.client.evaluateReflection(this.sessionId);
      else await this.client.evaluateRubric(this.sessionId);
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }

  async advance(target: string): Promise<void> {
    try {
      await this.client.advancePhase(this.sessionId, target);
      await this.refresh();
    } catch (err) {
      this.fail(err);
    }
  }
}
