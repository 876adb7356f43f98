/**
 * Application wiring: repository entry, tag pickers, directory navigator,
 * dual view panes, legend, diff and similarity panels.
 */

import { ApiClient, ApiError } from './api';
import { describeNode, renderGraph, type GraphHandle } from './graph';
import { renderLegend } from './legend';
import { renderDiffPanel, renderSimilarityPanel } from './panels';
import {
  defaultState,
  rescope,
  stateFromHash,
  stateToHash,
  type PaneState,
  type UiState,
} from './state';
import { renderTree } from './tree';
import type { ViewKind, ViewNode } from './types';

const VIEW_KINDS: ViewKind[] = ['directory', 'call', 'collaboration', 'integrated'];

/** The slice of the window the app touches; narrow so tests can fake it. */
export interface AppWindow {
  location: { hash: string };
  history: { replaceState(data: unknown, title: string, url?: string): void };
  addEventListener(type: 'hashchange', listener: () => void): void;
}

function byId(doc: Document, id: string): HTMLElement {
  const el = doc.getElementById(id);
  if (!el) {
    throw new Error(`missing element: ${id}`);
  }
  return el;
}

export class App {
  state: UiState = defaultState();
  private handles: { left: GraphHandle | null; right: GraphHandle | null } = {
    left: null,
    right: null,
  };

  constructor(
    private doc: Document,
    private api: ApiClient,
    private win: AppWindow = window,
  ) {}

  async start(): Promise<void> {
    this.state = stateFromHash(this.win.location.hash);
    this.bindControls();
    this.win.addEventListener('hashchange', () => {
      this.state = stateFromHash(this.win.location.hash);
      void this.refresh();
    });
    await this.populateRepos();
    if (this.state.repoId) {
      await this.refresh();
    }
  }

  private bindControls(): void {
    const form = byId(this.doc, 'repo-form') as HTMLFormElement;
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      const input = byId(this.doc, 'repo-locator') as HTMLInputElement;
      void this.addRepo(input.value.trim());
    });
    (byId(this.doc, 'repo-select') as HTMLSelectElement).addEventListener('change', (e) => {
      this.state = defaultState();
      this.state.repoId = (e.target as HTMLSelectElement).value;
      void this.loadRepo();
    });
    for (const side of ['left', 'right'] as const) {
      (byId(this.doc, `${side}-tag`) as HTMLSelectElement).addEventListener('change', (e) => {
        this.state[side].tag = (e.target as HTMLSelectElement).value;
        void this.refresh();
      });
      (byId(this.doc, `${side}-view`) as HTMLSelectElement).addEventListener('change', (e) => {
        this.state[side].view = (e.target as HTMLSelectElement).value as ViewKind;
        void this.refresh();
      });
    }
  }

  private async addRepo(locator: string): Promise<void> {
    if (!locator) {
      return;
    }
    try {
      const added = await this.api.addRepo(locator);
      this.showBanner(`analyzing ${locator}…`);
      await this.pollUntilReady(added.repo_id);
      this.state = defaultState();
      this.state.repoId = added.repo_id;
      await this.populateRepos();
      await this.loadRepo();
    } catch (err) {
      this.showBanner(String(err));
    }
  }

  private async pollUntilReady(repoId: string): Promise<void> {
    for (;;) {
      const status = await this.api.repoStatus(repoId);
      if (status === 'ready') {
        this.showBanner('');
        return;
      }
      if (status === 'failed') {
        throw new Error(`analysis failed for ${repoId}`);
      }
      await new Promise((resolve) => setTimeout(resolve, 1000));
    }
  }

  private async populateRepos(): Promise<void> {
    const select = byId(this.doc, 'repo-select') as HTMLSelectElement;
    const repos = await this.api.listRepos();
    select.innerHTML = '';
    for (const repo of repos) {
      const option = this.doc.createElement('option');
      option.value = repo.repo_id;
      option.textContent = repo.locator;
      select.appendChild(option);
    }
    if (this.state.repoId) {
      select.value = this.state.repoId;
    }
  }

  private async loadRepo(): Promise<void> {
    const tags = await this.api.listTags(this.state.repoId);
    const names = tags.map((t) => t.name);
    if (names.length === 0) {
      this.showBanner('repository has no release tags');
      return;
    }
    if (!names.includes(this.state.left.tag)) {
      this.state.left.tag = names[0];
    }
    if (!names.includes(this.state.right.tag)) {
      this.state.right.tag = names[names.length - 1];
    }
    await this.refresh();
  }

  private fillSelect(id: string, options: string[], value: string): void {
    const select = byId(this.doc, id) as HTMLSelectElement;
    select.innerHTML = '';
    for (const option of options) {
      const el = this.doc.createElement('option');
      el.value = option;
      el.textContent = option || '(root)';
      select.appendChild(el);
    }
    select.value = value;
  }

  async refresh(): Promise<void> {
    if (!this.state.repoId || !this.state.left.tag || !this.state.right.tag) {
      return;
    }
    this.syncUrl();
    const tags = await this.api.listTags(this.state.repoId);
    const names = tags.map((t) => t.name);
    this.fillSelect('left-tag', names, this.state.left.tag);
    this.fillSelect('right-tag', names, this.state.right.tag);
    this.fillSelect('left-view', VIEW_KINDS, this.state.left.view);
    this.fillSelect('right-view', VIEW_KINDS, this.state.right.view);
    try {
      await Promise.all([
        this.refreshTree(),
        this.refreshPane('left', this.state.left),
        this.refreshPane('right', this.state.right),
        this.refreshComparison(),
      ]);
      this.showBanner('');
    } catch (err) {
      if (err instanceof ApiError && err.status === 503) {
        this.showBanner('analysis in progress…');
      } else {
        this.showBanner(String(err));
      }
    }
  }

  private async refreshTree(): Promise<void> {
    const tree = await this.api.tree(this.state.repoId, this.state.left.tag);
    renderTree(byId(this.doc, 'tree'), tree, this.state.left.scope, (scope) => {
      this.state = rescope(this.state, scope);
      void this.refresh();
    });
  }

  private async refreshPane(side: 'left' | 'right', pane: PaneState): Promise<void> {
    const payload = await this.api.view(
      `view-${side}`,
      this.state.repoId,
      pane.tag,
      pane.view,
      pane.scope,
    );
    if (payload === null) {
      return; // a newer request for this pane superseded us
    }
    this.handles[side]?.stop();
    this.handles[side] = renderGraph(byId(this.doc, `${side}-graph`), payload, (node) =>
      this.selectNode(node),
    );
    if (side === 'left') {
      renderLegend(byId(this.doc, 'legend'), payload.legend);
    }
  }

  private async refreshComparison(): Promise<void> {
    const payload = await this.api.diff(
      this.state.repoId,
      this.state.left.tag,
      this.state.right.tag,
      this.state.left.view,
      this.state.left.scope,
    );
    if (payload === null) {
      return;
    }
    renderSimilarityPanel(byId(this.doc, 'similarity'), payload);
    renderDiffPanel(byId(this.doc, 'diff'), payload);
  }

  selectNode(node: ViewNode): void {
    this.state.selectedNode = node.id;
    this.syncUrl();
    byId(this.doc, 'inspector').textContent = describeNode(node);
  }

  private syncUrl(): void {
    const hash = `#${stateToHash(this.state)}`;
    if (this.win.location.hash !== hash) {
      this.win.history.replaceState(null, '', hash);
    }
  }

  private showBanner(message: string): void {
    const banner = byId(this.doc, 'banner');
    banner.textContent = message;
    banner.style.display = message ? 'block' : 'none';
  }
}

export function boot(baseUrl: string): App {
  const app = new App(document, new ApiClient(baseUrl));
  void app.start();
  return app;
}

declare global {
  interface Window {
    ARCHDELTA_API?: string;
  }
}

if (typeof document !== 'undefined' && document.getElementById('repo-form')) {
  boot(window.ARCHDELTA_API ?? 'http://127.0.0.1:8070');
}
