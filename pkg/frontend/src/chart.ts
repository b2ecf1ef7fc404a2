// Small SVG line chart, no dependencies. The markup builder is a pure
// function of the data so it can be tested without a DOM.

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

const WIDTH = 560;
const HEIGHT = 240;
const PAD = 36;

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1]; // flat series still needs a band
  return [lo, hi];
}

function fmt(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e5 || Math.abs(v) < 1e-3)) return v.toExponential(2);
  return String(Math.round(v * 1000) / 1000);
}

export function chartMarkup(series: Series[], xLabel: string, yLabel: string): string {
  const xs = series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = series.flatMap((s) => s.points.map((p) => p[1]));
  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const sx = (x: number) => PAD + ((x - x0) / (x1 - x0)) * (WIDTH - 2 * PAD);
  const sy = (y: number) => HEIGHT - PAD - ((y - y0) / (y1 - y0)) * (HEIGHT - 2 * PAD);

  const paths = series
    .map((s, i) => {
      const d = s.points
        .map(([x, y], k) => `${k === 0 ? 'M' : 'L'}${sx(x).toFixed(2)} ${sy(y).toFixed(2)}`)
        .join(' ');
      return `<path class="series series-${i}" fill="none" d="${d}"><title>${s.label}</title></path>`;
    })
    .join('');

  const legend = series
    .map((s, i) => `<text class="legend series-${i}" x="${PAD + 8 + i * 180}" y="16">${s.label}</text>`)
    .join('');

  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img">` +
    `<line class="axis" x1="${PAD}" y1="${HEIGHT - PAD}" x2="${WIDTH - PAD}" y2="${HEIGHT - PAD}"/>` +
    `<line class="axis" x1="${PAD}" y1="${PAD}" x2="${PAD}" y2="${HEIGHT - PAD}"/>` +
    `<text class="tick" x="${PAD}" y="${HEIGHT - PAD + 16}">${fmt(x0)}</text>` +
    `<text class="tick" x="${WIDTH - PAD}" y="${HEIGHT - PAD + 16}" text-anchor="end">${fmt(x1)}</text>` +
    `<text class="tick" x="${PAD - 4}" y="${HEIGHT - PAD}" text-anchor="end">${fmt(y0)}</text>` +
    `<text class="tick" x="${PAD - 4}" y="${PAD + 4}" text-anchor="end">${fmt(y1)}</text>` +
    `<text class="axis-label" x="${WIDTH / 2}" y="${HEIGHT - 4}" text-anchor="middle">${xLabel}</text>` +
    `<text class="axis-label" x="12" y="${HEIGHT / 2}" transform="rotate(-90 12 ${HEIGHT / 2})" text-anchor="middle">${yLabel}</text>` +
    legend +
    paths +
    `</svg>`
  );
}

export function renderChart(el: Element, series: Series[], xLabel: string, yLabel: string): void {
  el.innerHTML = chartMarkup(series, xLabel, yLabel);
}
