// What-if explorer: fetches /v1/curve for the current family and draws
// protected income and relative collateral damage against the starting
// income. Every slider change goes back to the server; nothing is
// interpolated or recomputed locally. A failed fetch leaves the last
// good chart up behind a stale-data banner.

import { renderChart } from './chart.js';
import type { CurveRow, FamilyParams } from './types.js';

export type CurveFetcher = (
  family: FamilyParams,
  yMin: number,
  yMax: number,
  points: number,
) => Promise<CurveRow[]>;

interface SliderSpec {
  name: 'eta' | 'alpha' | 'gamma' | 'c';
  label: string;
  min: number;
  max: number;
  step: number;
  fallback: number;
}

const SLIDERS: Record<string, SliderSpec[]> = {
  kolm_atkinson: [
    { name: 'eta', label: 'eta', min: 0.1, max: 8, step: 0.1, fallback: 2 },
  ],
  kolm_pollak: [
    { name: 'alpha', label: 'alpha', min: 0.01, max: 2, step: 0.01, fallback: 0.1 },
  ],
  cpie: [
    { name: 'gamma', label: 'gamma', min: 0.1, max: 8, step: 0.1, fallback: 2 },
    { name: 'c', label: 'floor c', min: 0.1, max: 50, step: 0.1, fallback: 1 },
  ],
};

const POINTS = 64;

export class Explorer {
  private family: FamilyParams = { family: 'kolm_atkinson', eta: 2 };
  private yMin = 1;
  private yMax = 100;

  constructor(
    private container: HTMLElement,
    private fetcher: CurveFetcher,
  ) {
    this.container.innerHTML =
      `<div data-role="controls"></div>` +
      `<p class="banner" data-role="stale-banner" hidden>curve fetch failed; showing stale data</p>` +
      `<div data-role="chart-protection"></div>` +
      `<div data-role="chart-damage"></div>`;
    this.renderControls();
  }

  setFamily(family: FamilyParams): void {
    this.family = { ...family };
    if (this.family.family === 'cpie') {
      // keep the grid above the floor or the server rejects it
      const c = typeof this.family.c === 'number' ? this.family.c : 1;
      this.yMin = Math.max(this.yMin, c * 1.05);
      this.yMax = Math.max(this.yMax, this.yMin * 10);
    }
    this.renderControls();
    void this.refresh();
  }

  params(): { family: FamilyParams; yMin: number; yMax: number } {
    return { family: { ...this.family }, yMin: this.yMin, yMax: this.yMax };
  }

  private renderControls(): void {
    const controls = this.container.querySelector<HTMLElement>('[data-role="controls"]')!;
    const sliders = (SLIDERS[this.family.family] ?? [])
      .map((s) => {
        const value = typeof this.family[s.name] === 'number' ? this.family[s.name] : s.fallback;
        return (
          `<label>${s.label} <input type="range" data-param="${s.name}"` +
          ` min="${s.min}" max="${s.max}" step="${s.step}" value="${value}">` +
          ` <output data-role="out-${s.name}">${value}</output></label>`
        );
      })
      .join('');
    const familyOptions = Object.keys(SLIDERS)
      .map(
        (name) =>
          `<option value="${name}"${name === this.family.family ? ' selected' : ''}>${name}</option>`,
      )
      .join('');
    controls.innerHTML =
      `<label>family <select data-role="family">${familyOptions}</select></label>` +
      sliders +
      `<label>y from <input type="number" step="any" data-role="ymin" value="${this.yMin}"></label>` +
      `<label>to <input type="number" step="any" data-role="ymax" value="${this.yMax}"></label>`;

    controls.querySelector<HTMLSelectElement>('[data-role="family"]')!.addEventListener('change', (ev) => {
      const name = (ev.target as HTMLSelectElement).value;
      const fam: FamilyParams = { family: name };
      for (const s of SLIDERS[name] ?? []) fam[s.name] = s.fallback;
      this.setFamily(fam);
    });
    for (const input of controls.querySelectorAll<HTMLInputElement>('input[data-param]')) {
      input.addEventListener('input', () => {
        const name = input.dataset.param as SliderSpec['name'];
        this.family[name] = Number(input.value);
        controls.querySelector(`[data-role="out-${name}"]`)!.textContent = input.value;
        void this.refresh();
      });
    }
    controls.querySelector<HTMLInputElement>('[data-role="ymin"]')!.addEventListener('change', (ev) => {
      this.yMin = Number((ev.target as HTMLInputElement).value);
      void this.refresh();
    });
    controls.querySelector<HTMLInputElement>('[data-role="ymax"]')!.addEventListener('change', (ev) => {
      this.yMax = Number((ev.target as HTMLInputElement).value);
      void this.refresh();
    });
  }

  async refresh(): Promise<void> {
    const banner = this.container.querySelector<HTMLElement>('[data-role="stale-banner"]')!;
    let rows: CurveRow[];
    try {
      rows = await this.fetcher(this.family, this.yMin, this.yMax, POINTS);
    } catch {
      banner.hidden = false;
      return;
    }
    banner.hidden = true;
    renderChart(
      this.container.querySelector<HTMLElement>('[data-role="chart-protection"]')!,
      [{ label: 'protected income', points: rows.map((r) => [r.y, r.protected_income]) }],
      'starting income y',
      'protected income',
    );
    renderChart(
      this.container.querySelector<HTMLElement>('[data-role="chart-damage"]')!,
      [{ label: 'relative collateral damage', points: rows.map((r) => [r.y, r.relative_damage]) }],
      'starting income y',
      'relative damage',
    );
  }
}
