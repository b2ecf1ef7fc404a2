// Question form: shows the server's prompt verbatim, collects one
// answer, posts it, and mirrors whatever comes back. On completion the
// inferred-preference JSON is displayed as the raw bytes the server
// sent, which is what the byte-agreement contract with the CLI is about.

import type { AnswerOutcome, AnswerPayload } from './types.js';
import type { WizardStore } from './state.js';

export interface FieldSpec {
  name: string;
  label: string;
}

const FIELDS: Record<string, FieldSpec[]> = {
  protected_fraction: [{ name: 'fraction', label: 'kept fraction, in (0, 1]' }],
  protected_fraction_two_rivals: [{ name: 'fraction', label: 'kept fraction, in (0, 1]' }],
  constant_damage: [{ name: 'damage', label: 'fixed loss' }],
  constant_damage_two_rivals: [{ name: 'damage', label: 'fixed loss' }],
  elasticity: [
    { name: 'elasticity', label: 'log slope, in (0, 1)' },
    { name: 'floor', label: 'income floor' },
  ],
  elasticity_two_rivals: [
    { name: 'elasticity', label: 'log slope, in (0, 1)' },
    { name: 'floor', label: 'income floor' },
  ],
  leaky_bucket: [
    { name: 'ratio', label: 'rich-to-poor income ratio, above 1' },
    { name: 'take', label: 'amount taken per amount delivered, at least 1' },
  ],
};

export function inputsForKind(kind: string): FieldSpec[] {
  const fields = FIELDS[kind];
  if (!fields) throw new Error(`unknown answer kind ${kind}`);
  return fields;
}

export function buildAnswer(kind: string, values: Record<string, number>): AnswerPayload {
  const parameters: Record<string, number> = {};
  for (const field of inputsForKind(kind)) {
    const v = values[field.name];
    if (v === undefined || Number.isNaN(v)) {
      throw new Error(`missing value for ${field.name}`);
    }
    parameters[field.name] = v;
  }
  return { kind, parameters };
}

export type AnswerPoster = (sessionId: string, answer: AnswerPayload) => Promise<AnswerOutcome>;

export class Wizard {
  constructor(
    private container: HTMLElement,
    private store: WizardStore,
    private poster: AnswerPoster,
  ) {
    store.subscribe(() => this.render());
  }

  render(): void {
    const state = this.store.get();
    if (state.inferred !== null) {
      this.renderInferred();
      return;
    }
    if (state.currentQuestion === null) {
      this.container.innerHTML = '<p data-role="idle">Starting a session…</p>';
      return;
    }
    this.renderQuestion();
  }

  private renderQuestion(): void {
    const state = this.store.get();
    const q = state.currentQuestion!;
    const options = q.accepted
      .map((k) => `<option value="${k}">${k.replace(/_/g, ' ')}</option>`)
      .join('');
    this.container.innerHTML =
      `<p data-role="prompt">${escapeHtml(q.prompt)}</p>` +
      `<p data-role="incomes">Starting incomes: ${q.incomes.join(' and ')}</p>` +
      `<form data-role="answer-form">` +
      `<label>answer as <select name="kind" data-role="kind">${options}</select></label>` +
      `<span data-role="fields"></span>` +
      `<button type="submit">Submit</button>` +
      `</form>` +
      `<p class="error" data-role="error" hidden></p>`;

    const form = this.container.querySelector<HTMLFormElement>('[data-role="answer-form"]')!;
    const kindSelect = form.querySelector<HTMLSelectElement>('[data-role="kind"]')!;
    const renderFields = () => {
      const spot = form.querySelector<HTMLElement>('[data-role="fields"]')!;
      spot.innerHTML = inputsForKind(kindSelect.value)
        .map(
          (f) =>
            `<label>${f.label} <input name="${f.name}" data-role="field-${f.name}"` +
            ` type="number" step="any" required></label>`,
        )
        .join('');
    };
    renderFields();
    kindSelect.addEventListener('change', renderFields);
    form.addEventListener('submit', (ev) => {
      ev.preventDefault();
      void this.submit(form, kindSelect.value);
    });
  }

  private async submit(form: HTMLFormElement, kind: string): Promise<void> {
    const state = this.store.get();
    if (state.sessionId === null || this.store.isComplete()) return;
    const errorEl = this.container.querySelector<HTMLElement>('[data-role="error"]')!;
    let answer: AnswerPayload;
    try {
      const values: Record<string, number> = {};
      for (const f of inputsForKind(kind)) {
        const input = form.querySelector<HTMLInputElement>(`[name="${f.name}"]`)!;
        values[f.name] = Number(input.value);
      }
      answer = buildAnswer(kind, values);
    } catch (e) {
      errorEl.textContent = (e as Error).message;
      errorEl.hidden = false;
      return;
    }
    try {
      const outcome = await this.poster(state.sessionId, answer);
      this.store.answerAccepted(answer, outcome);
    } catch (e) {
      // surfaced inline; the form stays live so the answer can be retried
      errorEl.textContent = (e as Error).message;
      errorEl.hidden = false;
    }
  }

  private renderInferred(): void {
    const state = this.store.get();
    const pref = state.inferred!;
    const flags = pref.flags.length
      ? `<p data-role="flags">flags: ${pref.flags.join(', ')}</p>`
      : '';
    this.container.innerHTML =
      `<h3 data-role="headline">${escapeHtml(describeFamily(pref.family))},` +
      ` coefficient ${pref.coefficient}</h3>` +
      `<p data-role="diagnostics">residuals ${JSON.stringify(pref.residuals)},` +
      ` inconsistency ${pref.inconsistency},` +
      ` ${pref.consistent ? 'consistent' : 'INCONSISTENT'}</p>` +
      flags +
      `<pre data-role="inferred-json">${escapeHtml(state.inferredRaw ?? '')}</pre>` +
      `<p data-role="complete">Session complete; further answers are disabled.</p>`;
  }
}

export function describeFamily(family: string): string {
  switch (family) {
    case 'kolm_atkinson':
      return 'Kolm-Atkinson';
    case 'kolm_pollak':
      return 'Kolm-Pollak';
    case 'cpie':
      return 'CPIE';
    default:
      return family;
  }
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
