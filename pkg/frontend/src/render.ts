// DOM rendering. Everything here is a pure function of the store state;
// wiring lives in main.ts.

import { EDGE_COLORS, LEVELS_SEVERE_FIRST, WARNING_SCALE, levelColor } from './scale.js';
import { levelBadges, riskBars, sliceRows, Store } from './state.js';
import { layoutGraph } from './layout.js';
import type { GraphDoc, Report, SliceRecord, WarningLevelValue } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderSummary(container: HTMLElement, report: Report | null): void {
  container.replaceChildren();
  if (report === null) {
    return;
  }
  if (report.slices.length === 0) {
    container.append(el('p', 'empty-state',
      'No privacy-relevant sources detected in this program.'));
    return;
  }

  const bars = el('div', 'risk-bars');
  bars.append(el('h3', undefined, 'Slices by source risk'));
  const maxCount = Math.max(...riskBars(report).map((b) => b.count));
  for (const { tier, count } of riskBars(report)) {
    const row = el('div', 'risk-bar-row');
    row.append(el('span', 'risk-bar-label', `risk ${tier}`));
    const track = el('div', 'risk-bar-track');
    const fill = el('div', 'risk-bar-fill');
    fill.style.width = `${(count / maxCount) * 100}%`;
    fill.textContent = String(count);
    track.append(fill);
    row.append(track);
    bars.append(row);
  }

  const badges = el('div', 'level-badges');
  badges.append(el('h3', undefined, 'Slices by warning level'));
  const badgeRow = el('div', 'badge-row');
  for (const { level, count } of levelBadges(report)) {
    const badge = el('span', `badge badge-${levelColor(level as WarningLevelValue)}`,
      `${level} ${count}`);
    badge.title = WARNING_SCALE[level as WarningLevelValue].message;
    badgeRow.append(badge);
  }
  badges.append(badgeRow);

  container.append(bars, badges);
}

export function renderSliceTable(
  container: HTMLElement, report: Report | null, selected: number | null,
  onSelect: (id: number) => void,
): void {
  container.replaceChildren();
  if (report === null || report.slices.length === 0) {
    return;
  }
  const table = el('table', 'slice-table');
  const head = el('tr');
  for (const title of ['level', 'risk', 'category', 'source', 'nodes (jimple/java)', 'flags']) {
    head.append(el('th', undefined, title));
  }
  table.append(head);
  for (const slice of sliceRows(report)) {
    const row = el('tr', slice.id === selected ? 'selected' : undefined);
    row.dataset.sliceId = String(slice.id);
    const levelCell = el('td');
    levelCell.append(el('span', `badge badge-${levelColor(slice.warning_level)}`,
      slice.warning_level));
    row.append(levelCell);
    row.append(el('td', undefined, String(slice.risk)));
    row.append(el('td', undefined, slice.data_category));
    row.append(el('td', 'sig', slice.source_sig));
    row.append(el('td', undefined,
      `${slice.node_count_jimple}/${slice.node_count_java}`));
    const flags = [slice.truncated ? 'truncated' : '', slice.timed_out ? 'timed out' : '']
      .filter(Boolean).join(', ');
    row.append(el('td', undefined, flags));
    row.addEventListener('click', () => onSelect(slice.id));
    table.append(row);
  }
  container.append(table);
}

export function renderGraph(
  container: HTMLElement, doc: GraphDoc | null, record: SliceRecord | null,
): void {
  container.replaceChildren();
  if (doc === null) {
    container.append(el('p', 'empty-state', 'Select a slice to view its graph.'));
    return;
  }
  const width = 900;
  const height = 600;
  const layout = layoutGraph(doc, width, height);
  const positions = new Map(layout.nodes.map((n) => [n.id, n]));

  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${width} ${height}`);
  svg.setAttribute('class', 'slice-graph');

  const defs = document.createElementNS(SVG_NS, 'defs');
  defs.innerHTML = `<marker id="arrow" markerWidth="8" markerHeight="8"
      refX="20" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#888"/></marker>`;
  svg.append(defs);

  for (const edge of doc.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const line = document.createElementNS(SVG_NS, 'line');
    line.setAttribute('x1', String(a.x));
    line.setAttribute('y1', String(a.y));
    line.setAttribute('x2', String(b.x));
    line.setAttribute('y2', String(b.y));
    line.setAttribute('stroke', EDGE_COLORS[edge.kind]);
    line.setAttribute('stroke-width', '1.6');
    line.setAttribute('marker-end', 'url(#arrow)');
    svg.append(line);
  }

  const sourceNode = record === null ? null
    : doc.nodes.find((n) => n.labels.some((l) => l.type === 'source'
        && l.category === record.data_category)) ?? null;
  for (const node of doc.nodes) {
    const pos = positions.get(node.id);
    if (!pos) continue;
    const group = document.createElementNS(SVG_NS, 'g');
    const circle = document.createElementNS(SVG_NS, 'circle');
    circle.setAttribute('cx', String(pos.x));
    circle.setAttribute('cy', String(pos.y));
    circle.setAttribute('r', '14');
    const isSource = node.labels.some((l) => l.type === 'source');
    circle.setAttribute('fill', isSource ? '#ffd166' : '#e9eef5');
    circle.setAttribute('stroke', sourceNode !== null && node.id === sourceNode.id
      ? '#d62828' : '#5f6b7a');
    circle.setAttribute('stroke-width', node.labels.length ? '2.5' : '1.2');
    const title = document.createElementNS(SVG_NS, 'title');
    title.textContent = nodeTooltip(node);
    const text = document.createElementNS(SVG_NS, 'text');
    text.setAttribute('x', String(pos.x));
    text.setAttribute('y', String(pos.y + 4));
    text.setAttribute('text-anchor', 'middle');
    text.setAttribute('class', 'node-id');
    text.textContent = String(node.id);
    group.append(circle, title, text);
    svg.append(group);
  }
  container.append(svg);

  if (layout.hiddenCount > 0) {
    container.append(el('p', 'hidden-count',
      `+${layout.hiddenCount} more nodes beyond the display cap`));
  }

  const legend = el('div', 'legend');
  legend.append(el('h4', undefined, 'Legend'));
  for (const [kind, color] of Object.entries(EDGE_COLORS)) {
    const item = el('div', 'legend-item');
    const swatch = el('span', 'legend-swatch');
    swatch.style.background = color;
    item.append(swatch, el('span', undefined,
      kind === 'data' ? 'data edge' : 'control and data edge'));
    legend.append(item);
  }
  container.append(legend);
}

function nodeTooltip(node: GraphDoc['nodes'][number]): string {
  const lines = [node.text, `kind: ${node.kind}`];
  for (const label of node.labels) {
    if (label.type === 'source') {
      lines.push(`source: ${label.category} (risk ${label.risk})`);
    } else {
      const strength = label.strength ? `, ${label.strength}` : '';
      lines.push(`method: ${label.category}${strength}`);
    }
  }
  return lines.join('\n');
}

export function renderSidePanel(container: HTMLElement,
                                record: SliceRecord | null): void {
  container.replaceChildren();
  if (record === null) {
    return;
  }
  const scale = WARNING_SCALE[record.warning_level];
  container.append(el('h3', undefined,
    `Warning level ${record.warning_level} — ${scale.severity}`));
  container.append(el('p', 'scale-message', scale.message));
  container.append(el('p', 'legal-note', scale.legalNote));
  const pseudo = record.pseudo_summary;
  container.append(el('p', 'pseudo', pseudo.present
    ? `Pseudonymization present (weakest technique: ${pseudo.weakest_strength})`
    : 'No pseudonymization observed in this slice.'));
  const docs = el('p', 'doc-links');
  const link = el('a', undefined, 'Warning scale and dataset documentation');
  link.setAttribute('href', '#documentation');
  docs.append(link);
  container.append(docs);
}

export function renderDocumentation(container: HTMLElement): void {
  const table = el('table', 'doc-table');
  const head = el('tr');
  for (const title of ['Level', 'Color', 'Risk', 'Slice property', 'Legal implication']) {
    head.append(el('th', undefined, title));
  }
  table.append(head);
  for (const level of [...LEVELS_SEVERE_FIRST].reverse()) {
    const row = el('tr');
    const cell = el('td');
    cell.append(el('span', `badge badge-${levelColor(level)}`, level));
    row.append(cell);
    row.append(el('td', undefined, WARNING_SCALE[level].color));
    row.append(el('td', undefined, WARNING_SCALE[level].severity));
    row.append(el('td', undefined, WARNING_SCALE[level].message));
    row.append(el('td', undefined, WARNING_SCALE[level].legalNote));
    table.append(row);
  }
  container.append(el('h3', undefined, 'Warning scale'), table);
  container.append(el('p', undefined,
    'Sources are matched against the identifier dataset: risk 1 identifies '
    + 'a person or device without additional information; risk 2 requires '
    + 'additional information. Privacy-relevant methods are matched by '
    + 'library package prefix and binned into string manipulation, '
    + 'processing/storage, third-party sharing, and pseudonymization.'));
}

export function renderStatus(container: HTMLElement, store: Store): void {
  const { phase, error } = store.state;
  container.replaceChildren();
  if (phase === 'submitting' || phase === 'waiting') {
    container.append(el('div', 'banner banner-info',
      phase === 'submitting' ? 'Submitting analysis…' : 'Analysis running…'));
  } else if (phase === 'failed' && error) {
    container.append(el('div', 'banner banner-error', error));
  }
}
