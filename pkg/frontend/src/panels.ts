/**
 * Diff and similarity panels. Every number shown is copied verbatim from
 * the API payload; the UI computes nothing itself.
 */

import type { DiffPayload, SimilarityBreakdown } from './types';

const VARIANT_LABELS: [keyof DiffPayload['similarity'] & string, string][] = [
  ['architectural', 'Architectural'],
  ['functional', 'Functional'],
  ['class', 'Class'],
  ['module', 'Module'],
];

function formatScore(breakdown: SimilarityBreakdown): string {
  return `${breakdown.score.toFixed(2)}%`;
}

export function renderSimilarityPanel(container: HTMLElement, payload: DiffPayload): void {
  container.innerHTML = '';
  const doc = container.ownerDocument;
  const table = doc.createElement('table');
  table.className = 'similarity';
  for (const [key, label] of VARIANT_LABELS) {
    const breakdown = payload.similarity[key] as SimilarityBreakdown;
    const row = doc.createElement('tr');
    row.dataset.variant = key;
    const name = doc.createElement('td');
    name.textContent = label;
    const score = doc.createElement('td');
    score.className = 'score';
    score.textContent = formatScore(breakdown);
    const ops = doc.createElement('td');
    ops.className = 'ops';
    ops.textContent =
      `+${breakdown.addC}/-${breakdown.remC} components, ` +
      `+${breakdown.addE}/-${breakdown.remE} entities`;
    row.append(name, score, ops);
    table.appendChild(row);
  }
  container.appendChild(table);
}

export function renderDiffPanel(container: HTMLElement, payload: DiffPayload): void {
  container.innerHTML = '';
  const doc = container.ownerDocument;
  const sections: [string, [string, string][]][] = [
    ['added', payload.diff.added],
    ['removed', payload.diff.removed],
  ];
  for (const [name, items] of sections) {
    const heading = doc.createElement('h3');
    heading.textContent = `${name} (${items.length})`;
    const list = doc.createElement('ul');
    list.className = name;
    for (const [kind, key] of items) {
      const item = doc.createElement('li');
      item.dataset.kind = kind;
      item.textContent = `${kind} ${key}`;
      list.appendChild(item);
    }
    container.append(heading, list);
  }
}

/** Scores read back from the panel, for parity checks against the API. */
export function panelScores(container: HTMLElement): Record<string, string> {
  const scores: Record<string, string> = {};
  for (const row of container.querySelectorAll('tr[data-variant]')) {
    const variant = (row as HTMLElement).dataset.variant ?? '';
    scores[variant] = row.querySelector('.score')?.textContent ?? '';
  }
  return scores;
}
