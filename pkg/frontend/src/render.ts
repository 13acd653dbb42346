/** Pure SVG rendering of a session view: same view, same markup. */

import { layoutTree } from './layout.js';
import { statusBanner } from './session.js';
import type { SessionView } from './session.js';

const MAKER_FILL = '#e41a1c';
const BREAKER_FILL = '#377eb8';
const FREE_FILL = '#ffffff';
const WIN_STROKE = '#f2a900';
const RADIUS = 8;

function vertexFill(view: SessionView, v: number): string {
  if (view.maker.has(v)) {
    return MAKER_FILL;
  }
  if (view.breaker.has(v)) {
    return BREAKER_FILL;
  }
  return FREE_FILL;
}

export function renderSvg(view: SessionView): string {
  const { x, y, width, height } = layoutTree(view.tree);
  const winning = new Set(view.winningPath ?? []);
  const lines: string[] = [];
  lines.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height + 40}" ` +
      `data-status="${view.status}">`,
  );
  lines.push(`  <text x="8" y="16" class="banner">${statusBanner(view)}</text>`);
  lines.push(`  <g transform="translate(0 24)">`);
  for (const node of view.tree.nodes) {
    if (node.parent === null) {
      continue;
    }
    const highlight = winning.has(node.id) && winning.has(node.parent);
    const style = highlight
      ? `stroke="${WIN_STROKE}" stroke-width="5" class="winning-path"`
      : `stroke="#999" stroke-width="1"`;
    lines.push(
      `  <line x1="${x[node.parent]}" y1="${y[node.parent]}" ` +
        `x2="${x[node.id]}" y2="${y[node.id]}" ${style}/>`,
    );
  }
  for (const node of view.tree.nodes) {
    const v = node.id;
    const classes = ['vertex'];
    if (winning.has(v)) {
      classes.push('winning');
    }
    if (v === view.lastMakerMove) {
      classes.push('last-maker-move');
    }
    lines.push(
      `  <circle data-vertex="${v}" class="${classes.join(' ')}" ` +
        `cx="${x[v]}" cy="${y[v]}" r="${RADIUS}" fill="${vertexFill(view, v)}" ` +
        `stroke="${winning.has(v) ? WIN_STROKE : '#333'}"/>`,
    );
  }
  lines.push('  </g>');
  if (view.error !== null) {
    lines.push(`  <text x="8" y="${height + 36}" class="toast">${view.error}</text>`);
  }
  lines.push('</svg>');
  return lines.join('\n');
}
