/** Per-view legend widget; contents come straight from the view payload. */

import type { LegendEntry } from './types';
import { KIND_DISPLAY_NAMES } from './types';

export function renderLegend(container: HTMLElement, entries: LegendEntry[]): void {
  container.innerHTML = '';
  const list = container.ownerDocument.createElement('ul');
  list.className = 'legend';
  for (const entry of entries) {
    const item = container.ownerDocument.createElement('li');
    item.dataset.kind = entry.kind;
    const swatch = container.ownerDocument.createElement('span');
    swatch.className = 'swatch';
    swatch.style.backgroundColor = entry.color;
    const label = container.ownerDocument.createElement('span');
    label.textContent = KIND_DISPLAY_NAMES[entry.kind] ?? entry.kind;
    item.append(swatch, label);
    list.appendChild(item);
  }
  container.appendChild(list);
}

export function legendKinds(container: HTMLElement): string[] {
  return Array.from(container.querySelectorAll('li')).map(
    (item) => (item as HTMLElement).dataset.kind ?? '',
  );
}
