/**
 * Thin client over the read-only archdelta API.
 *
 * Every fetching helper carries a request sequence number per logical
 * slot, so a slow stale response can never overwrite a newer one.
 */

import type {
  CohesionPayload,
  DiffPayload,
  RepoSummary,
  TagInfo,
  TreeDirectory,
  ViewKind,
  ViewPayload,
} from './types';

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private sequences = new Map<string, number>();

  constructor(private baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new ApiError(response.status, await response.text());
    }
    return (await response.json()) as T;
  }

  /**
   * Fetch guarded by a per-slot sequence number; resolves to null when a
   * newer request for the same slot was issued meanwhile.
   */
  async latest<T>(slot: string, path: string): Promise<T | null> {
    const seq = (this.sequences.get(slot) ?? 0) + 1;
    this.sequences.set(slot, seq);
    const payload = await this.get<T>(path);
    return this.sequences.get(slot) === seq ? payload : null;
  }

  async listRepos(): Promise<RepoSummary[]> {
    const payload = await this.get<{ repos: RepoSummary[] }>('/repos');
    return payload.repos;
  }

  async addRepo(locator: string): Promise<{ repo_id: string; status: string }> {
    const response = await this.fetchFn(`${this.baseUrl}/repos`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ locator }),
    });
    if (!response.ok && response.status !== 202) {
      throw new ApiError(response.status, await response.text());
    }
    return (await response.json()) as { repo_id: string; status: string };
  }

  async repoStatus(repoId: string): Promise<string> {
    const payload = await this.get<{ status: string }>(`/repos/${repoId}`);
    return payload.status;
  }

  async listTags(repoId: string): Promise<TagInfo[]> {
    const payload = await this.get<{ tags: TagInfo[] }>(`/repos/${repoId}/tags`);
    return payload.tags;
  }

  async tree(repoId: string, tag: string): Promise<TreeDirectory> {
    const payload = await this.get<{ tree: TreeDirectory }>(
      `/repos/${repoId}/tags/${encodeURIComponent(tag)}/tree`,
    );
    return payload.tree;
  }

  viewPath(repoId: string, tag: string, kind: ViewKind, scope: string): string {
    const params = new URLSearchParams({ kind, path: scope });
    return `/repos/${repoId}/tags/${encodeURIComponent(tag)}/view?${params}`;
  }

  async view(
    slot: string,
    repoId: string,
    tag: string,
    kind: ViewKind,
    scope: string,
  ): Promise<ViewPayload | null> {
    return this.latest<ViewPayload>(slot, this.viewPath(repoId, tag, kind, scope));
  }

  async diff(
    repoId: string,
    base: string,
    head: string,
    kind: ViewKind,
    scope: string,
  ): Promise<DiffPayload | null> {
    const params = new URLSearchParams({ base, head, kind, path: scope });
    return this.latest<DiffPayload>('diff', `/repos/${repoId}/diff?${params}`);
  }

  async cohesion(repoId: string, tag: string): Promise<CohesionPayload> {
    return this.get<CohesionPayload>(
      `/repos/${repoId}/tags/${encodeURIComponent(tag)}/cohesion`,
    );
  }
}
