/**
 * Directory navigator. Only paths present in the tree payload are
 * clickable, so an unknown scope can never be constructed from here.
 */

import type { TreeDirectory } from './types';

export function renderTree(
  container: HTMLElement,
  tree: TreeDirectory,
  currentScope: string,
  onNavigate: (scope: string) => void,
): void {
  container.innerHTML = '';
  const doc = container.ownerDocument;

  const renderDir = (dir: TreeDirectory): HTMLElement => {
    const item = doc.createElement('li');
    const link = doc.createElement('a');
    link.href = '#';
    link.dataset.scope = dir.path;
    link.textContent = dir.path === '' ? '(root)' : dir.path.split('/').pop() ?? dir.path;
    if (dir.path === currentScope) {
      link.classList.add('current');
    }
    link.addEventListener('click', (event) => {
      event.preventDefault();
      onNavigate(dir.path);
    });
    item.appendChild(link);

    const children = doc.createElement('ul');
    for (const sub of dir.directories) {
      children.appendChild(renderDir(sub));
    }
    for (const file of dir.files) {
      const leaf = doc.createElement('li');
      leaf.className = 'file';
      leaf.dataset.kind = file.kind;
      leaf.textContent = file.path.split('/').pop() ?? file.path;
      children.appendChild(leaf);
    }
    if (children.childElementCount > 0) {
      item.appendChild(children);
    }
    return item;
  };

  const root = doc.createElement('ul');
  root.className = 'tree';
  root.appendChild(renderDir(tree));
  container.appendChild(root);
}

export function navigableScopes(container: HTMLElement): string[] {
  return Array.from(container.querySelectorAll('a[data-scope]')).map(
    (link) => (link as HTMLElement).dataset.scope ?? '',
  );
}
