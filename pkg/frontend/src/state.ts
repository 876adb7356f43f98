/**
 * Dual-pane UI state with URL round-tripping.
 *
 * Both panes always reference tags of the same repository; the diff and
 * similarity panels reflect (left.tag, right.tag, left.view, left.scope).
 * The full state is deep-linkable through the location hash.
 */

import type { ViewKind } from './types';

export interface PaneState {
  tag: string;
  view: ViewKind;
  scope: string;
}

export interface UiState {
  repoId: string;
  left: PaneState;
  right: PaneState;
  selectedNode: number | null;
}

const VIEW_KINDS: ViewKind[] = ['directory', 'call', 'collaboration', 'integrated'];

export function defaultState(): UiState {
  return {
    repoId: '',
    left: { tag: '', view: 'directory', scope: '' },
    right: { tag: '', view: 'directory', scope: '' },
    selectedNode: null,
  };
}

function asViewKind(value: string | null): ViewKind {
  return VIEW_KINDS.includes(value as ViewKind) ? (value as ViewKind) : 'directory';
}

/** Serialize the state into a URL hash fragment (without the leading '#'). */
export function stateToHash(state: UiState): string {
  const params = new URLSearchParams();
  params.set('repo', state.repoId);
  params.set('ltag', state.left.tag);
  params.set('lview', state.left.view);
  params.set('lscope', state.left.scope);
  params.set('rtag', state.right.tag);
  params.set('rview', state.right.view);
  params.set('rscope', state.right.scope);
  if (state.selectedNode !== null) {
    params.set('node', String(state.selectedNode));
  }
  return params.toString();
}

/** Rebuild the state from a URL hash fragment; missing keys take defaults. */
export function stateFromHash(hash: string): UiState {
  const params = new URLSearchParams(hash.replace(/^#/, ''));
  const node = params.get('node');
  return {
    repoId: params.get('repo') ?? '',
    left: {
      tag: params.get('ltag') ?? '',
      view: asViewKind(params.get('lview')),
      scope: params.get('lscope') ?? '',
    },
    right: {
      tag: params.get('rtag') ?? '',
      view: asViewKind(params.get('rview')),
      scope: params.get('rscope') ?? '',
    },
    selectedNode: node === null || node === '' ? null : Number(node),
  };
}

/** Rescope both panes at once, as the directory navigator does. */
export function rescope(state: UiState, scope: string): UiState {
  return {
    ...state,
    left: { ...state.left, scope },
    right: { ...state.right, scope },
    selectedNode: null,
  };
}
