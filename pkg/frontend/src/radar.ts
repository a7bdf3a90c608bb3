// Radar chart geometry and SVG rendering for the goal/actual overlay.

import type { RadarViewModel } from './model';

export const RADAR_MAX = 100;

const SVG_NS = 'http://www.w3.org/2000/svg';

/** Vertex position for one axis value; axis 0 points straight up, then clockwise. */
export function radarPoint(
  index: number,
  count: number,
  value: number,
  cx: number,
  cy: number,
  radius: number,
  max: number = RADAR_MAX,
): [number, number] {
  const angle = -Math.PI / 2 + (2 * Math.PI * index) / count;
  const r = radius * (Math.max(0, Math.min(max, value)) / max);
  return [cx + r * Math.cos(angle), cy + r * Math.sin(angle)];
}

/** SVG polygon "points" attribute for a full series. */
export function polygonPoints(
  values: number[],
  cx: number,
  cy: number,
  radius: number,
  max: number = RADAR_MAX,
): string {
  return values
    .map((v, i) => radarPoint(i, values.length, v, cx, cy, radius, max).map((n) => n.toFixed(2)).join(','))
    .join(' ');
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  return node;
}

/**
 * Draw the radar into an (emptied) SVG element: grid rings, axes, labels,
 * a `series-target` polygon when targets exist and a `series-actual`
 * polygon once reflection scores exist.
 */
export function renderRadar(svg: SVGElement, radar: RadarViewModel, size = 280): void {
  svg.innerHTML = '';
  svg.setAttribute('viewBox', `0 0 ${size} ${size}`);
  const cx = size / 2;
  const cy = size / 2;
  const radius = size * 0.36;
  const count = radar.keys.length;

  for (const fraction of [0.25, 0.5, 0.75, 1]) {
    svg.appendChild(
      svgEl('polygon', {
        points: polygonPoints(Array(count).fill(RADAR_MAX * fraction), cx, cy, radius),
        class: 'radar-grid',
        fill: 'none',
        stroke: '#d5d9e0',
      }),
    );
  }
  radar.keys.forEach((_, i) => {
    const [x, y] = radarPoint(i, count, RADAR_MAX, cx, cy, radius);
    svg.appendChild(svgEl('line', { x1: String(cx), y1: String(cy), x2: x.toFixed(2), y2: y.toFixed(2), stroke: '#d5d9e0' }));
    const [lx, ly] = radarPoint(i, count, RADAR_MAX * 1.22, cx, cy, radius);
    const label = svgEl('text', {
      x: lx.toFixed(2),
      y: ly.toFixed(2),
      class: 'radar-label',
      'text-anchor': 'middle',
      'font-size': '10',
    });
    label.textContent = radar.labels[i] ?? '';
    svg.appendChild(label);
  });

  const series: Array<[string, number[] | null, string]> = [
    ['series-target', radar.target, 'rgba(79, 110, 216, 0.85)'],
    ['series-actual', radar.actual, 'rgba(216, 197, 79, 0.9)'],
  ];
  for (const [cls, values, stroke] of series) {
    if (!values) continue;
    svg.appendChild(
      svgEl('polygon', {
        points: polygonPoints(values, cx, cy, radius),
        class: cls,
        fill: stroke.replace(/[\d.]+\)$/, '0.18)'),
        stroke,
        'stroke-width': '2',
      }),
    );
  }
}
