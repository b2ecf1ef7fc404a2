// Wires the wizard, the leaky-bucket side panel, and the explorer to
// the API. One session per page load; restarting begins a new one.

import * as api from './api.js';
import { Explorer } from './explorer.js';
import { WizardStore, familyOf } from './state.js';
import { Wizard } from './wizard.js';

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function startSession(store: WizardStore): Promise<void> {
  try {
    const { id, firstQuestion } = await api.createSession();
    store.sessionStarted(id, firstQuestion);
  } catch (e) {
    el('wizard').innerHTML = `<p class="error">cannot reach the service: ${(e as Error).message}</p>`;
  }
}

function wireLeakyPanel(): void {
  const ratio = el<HTMLInputElement>('leaky-ratio');
  const take = el<HTMLInputElement>('leaky-take');
  const out = el('leaky-result');
  const run = async () => {
    try {
      const body = await api.inferLeakyBucket(Number(ratio.value), Number(take.value));
      out.textContent = `implied power-family coefficient: ${body.coefficient}`;
    } catch (e) {
      out.textContent = (e as Error).message;
    }
  };
  el<HTMLButtonElement>('leaky-run').addEventListener('click', () => void run());
}

function startup(): void {
  const baseInput = el<HTMLInputElement>('base-url');
  baseInput.value = api.getBaseUrl();
  baseInput.addEventListener('change', () => api.setBaseUrl(baseInput.value));

  const store = new WizardStore();
  const wizard = new Wizard(el('wizard'), store, api.postAnswer);
  const explorer = new Explorer(el('explorer'), api.fetchCurve);

  store.subscribe((state) => {
    if (state.inferred !== null) explorer.setFamily(familyOf(state.inferred));
  });

  el<HTMLButtonElement>('restart').addEventListener('click', () => void startSession(store));
  wireLeakyPanel();

  wizard.render();
  void explorer.refresh();
  void startSession(store);
}

document.addEventListener('DOMContentLoaded', startup);
