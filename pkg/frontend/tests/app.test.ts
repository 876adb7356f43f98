import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { App } from '../src/main';
import { stateToHash } from '../src/state';
import { makeFakeWindow, mountAppShell } from './dom';
import { CALL_VIEW, DIFF, DIRECTORY_VIEW, TREE } from './fixtures';

const TAGS = [
  { name: 'v1', commit_id: 'a'.repeat(40), timestamp: '2024-01-01T01:00:00+00:00' },
  { name: 'v2', commit_id: 'b'.repeat(40), timestamp: '2024-01-01T02:00:00+00:00' },
];

function fakeApi(requests: string[]): ApiClient {
  return new ApiClient('http://api', async (input) => {
    const url = new URL(String(input));
    requests.push(url.pathname + url.search);
    const body = (() => {
      if (url.pathname === '/repos') {
        return {
          repos: [{ repo_id: 'r1', locator: '/tmp/demo', tags: ['v1', 'v2'], status: 'ready' }],
        };
      }
      if (url.pathname === '/repos/r1/tags') {
        return { tags: TAGS };
      }
      if (url.pathname.endsWith('/tree')) {
        return { tree: TREE };
      }
      if (url.pathname.endsWith('/view')) {
        return url.searchParams.get('kind') === 'call' ? CALL_VIEW : DIRECTORY_VIEW;
      }
      if (url.pathname === '/repos/r1/diff') {
        return DIFF;
      }
      throw new Error(`unexpected request: ${url}`);
    })();
    return new Response(JSON.stringify(body), { status: 200 });
  });
}

const DEEP_LINK =
  '#' +
  stateToHash({
    repoId: 'r1',
    left: { tag: 'v1', view: 'directory', scope: '' },
    right: { tag: 'v2', view: 'directory', scope: '' },
    selectedNode: null,
  });

async function settle(): Promise<void> {
  for (let i = 0; i < 5; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}

describe('App', () => {
  let requests: string[];

  beforeEach(() => {
    mountAppShell();
    requests = [];
  });

  async function startApp(hash = DEEP_LINK) {
    const win = makeFakeWindow(hash);
    const app = new App(document, fakeApi(requests), win);
    await app.start();
    await settle();
    return { app, win };
  }

  it('restores pane state from a deep-link URL', async () => {
    const { app } = await startApp();
    expect(app.state.repoId).toBe('r1');
    expect((document.getElementById('left-tag') as HTMLSelectElement).value).toBe('v1');
    expect((document.getElementById('right-tag') as HTMLSelectElement).value).toBe('v2');
  });

  it('renders each pane with the node set of its API payload', async () => {
    await startApp();
    for (const side of ['left', 'right']) {
      const ids = Array.from(
        document.querySelectorAll(`#${side}-graph circle`),
      ).map((c) => Number(c.getAttribute('data-id')));
      expect(new Set(ids)).toEqual(new Set(DIRECTORY_VIEW.nodes.map((n) => n.id)));
    }
  });

  it('updates the legend when the left view changes', async () => {
    const { app } = await startApp();
    const kinds = () =>
      Array.from(document.querySelectorAll('#legend li')).map(
        (item) => (item as HTMLElement).dataset.kind,
      );
    expect(kinds()).toEqual(['directory', 'file', 'unknown']);
    const select = document.getElementById('left-view') as HTMLSelectElement;
    select.value = 'call';
    select.dispatchEvent(new Event('change'));
    await settle();
    expect(app.state.left.view).toBe('call');
    expect(kinds()).toEqual(['file', 'function_def', 'call_site']);
  });

  it('shows similarity scores identical to the diff payload', async () => {
    await startApp();
    const score = document.querySelector(
      '#similarity tr[data-variant="functional"] .score',
    )!;
    expect(score.textContent).toBe(`${DIFF.similarity.functional.score.toFixed(2)}%`);
    const added = document.querySelectorAll('#diff ul.added li');
    expect(added.length).toBe(DIFF.diff.added.length);
  });

  it('clicking a node shows its component kind and updates the URL', async () => {
    const { app, win } = await startApp();
    (document.querySelector('#left-graph circle[data-id="2"]') as SVGElement).dispatchEvent(
      new MouseEvent('click', { bubbles: true }),
    );
    expect(document.getElementById('inspector')!.textContent).toBe('directory: pkg');
    expect(app.state.selectedNode).toBe(2);
    expect(win.location.hash).toContain('node=2');
  });

  it('navigating the tree rescopes both panes and refetches views', async () => {
    const { app } = await startApp();
    requests.length = 0;
    (document.querySelector('#tree a[data-scope="pkg"]') as HTMLElement).click();
    await settle();
    expect(app.state.left.scope).toBe('pkg');
    expect(app.state.right.scope).toBe('pkg');
    const viewRequests = requests.filter((r) => r.includes('/view'));
    expect(viewRequests.length).toBe(2);
    for (const request of viewRequests) {
      expect(request).toContain('path=pkg');
    }
    expect(requests.some((r) => r.startsWith('/repos/r1/diff') && r.includes('path=pkg'))).toBe(
      true,
    );
  });

  it('reacts to external hash changes', async () => {
    const { app, win } = await startApp();
    win.fireHashChange(
      '#' +
        stateToHash({
          repoId: 'r1',
          left: { tag: 'v2', view: 'call', scope: '' },
          right: { tag: 'v2', view: 'call', scope: '' },
          selectedNode: null,
        }),
    );
    await settle();
    expect(app.state.left.tag).toBe('v2');
    expect(app.state.left.view).toBe('call');
  });
});
