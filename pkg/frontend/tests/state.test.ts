import { describe, expect, it } from 'vitest';

import { defaultState, rescope, stateFromHash, stateToHash, type UiState } from '../src/state';

describe('state URL round-trip', () => {
  it('restores every pane field from the hash', () => {
    const state: UiState = {
      repoId: 'demo-1a2b3c4d',
      left: { tag: 'v0.9.12', view: 'call', scope: 'mu/modes' },
      right: { tag: 'v1.0.0.beta.15', view: 'collaboration', scope: 'mu/modes' },
      selectedNode: 42,
    };
    expect(stateFromHash(stateToHash(state))).toEqual(state);
  });

  it('round-trips scopes with slashes and tags with dots', () => {
    const state = defaultState();
    state.repoId = 'r-00000000';
    state.left = { tag: 'release/1.0', view: 'integrated', scope: 'a/b/c' };
    state.right = { tag: 'v2', view: 'directory', scope: '' };
    expect(stateFromHash(`#${stateToHash(state)}`)).toEqual(state);
  });

  it('falls back to defaults for an empty or junk hash', () => {
    expect(stateFromHash('')).toEqual(defaultState());
    const junk = stateFromHash('#lview=sideways&node=');
    expect(junk.left.view).toBe('directory');
    expect(junk.selectedNode).toBeNull();
  });
});

describe('rescope', () => {
  it('moves both panes to the new scope and clears the selection', () => {
    const state = defaultState();
    state.left.scope = 'old';
    state.right.scope = 'old';
    state.selectedNode = 3;
    const next = rescope(state, 'pkg');
    expect(next.left.scope).toBe('pkg');
    expect(next.right.scope).toBe('pkg');
    expect(next.selectedNode).toBeNull();
    expect(state.left.scope).toBe('old');
  });

  it('descend then ascend restores the prior pane state', () => {
    const start = defaultState();
    start.left.view = 'call';
    const down = rescope(start, 'pkg');
    const back = rescope(down, '');
    expect(back.left).toEqual(start.left);
    expect(back.right).toEqual(start.right);
  });
});
