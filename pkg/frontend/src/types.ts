/** Payload shapes served by the archdelta HTTP API. */

export type ViewKind = 'directory' | 'call' | 'collaboration' | 'integrated';

export interface LegendEntry {
  kind: string;
  color: string;
}

export interface ViewNode {
  id: number;
  kind: string;
  label: string;
  qualified_name: string;
  path: string;
  is_external: boolean;
}

export interface ViewEdge {
  src: number;
  dst: number;
  kind: string;
}

export interface ViewPayload {
  schema_version: number;
  view: ViewKind;
  scope: string;
  legend: LegendEntry[];
  nodes: ViewNode[];
  edges: ViewEdge[];
}

export interface TagInfo {
  name: string;
  commit_id: string;
  timestamp: string;
}

export interface RepoSummary {
  repo_id: string;
  locator: string;
  tags: string[];
  status: 'building' | 'ready' | 'failed';
}

export interface TreeDirectory {
  path: string;
  directories: TreeDirectory[];
  files: { path: string; kind: string }[];
}

export interface SimilarityBreakdown {
  addC: number;
  remC: number;
  addE: number;
  remE: number;
  mto: number;
  aco_i: number;
  aco_j: number;
  score: number;
}

export interface DiffPayload {
  schema_version: number;
  diff: {
    base_tag: string;
    head_tag: string;
    view: ViewKind;
    scope: string;
    added: [string, string][];
    removed: [string, string][];
  };
  similarity: {
    base_tag: string;
    head_tag: string;
    scope: string;
    architectural: SimilarityBreakdown;
    functional: SimilarityBreakdown;
    class: SimilarityBreakdown;
    module: SimilarityBreakdown;
  };
}

export interface CohesionPayload {
  schema_version: number;
  tag: string;
  entries: { class: string; lcom4: number; method_count: number }[];
}

/** Human-readable names shown when a node is inspected. */
export const KIND_DISPLAY_NAMES: Record<string, string> = {
  directory: 'directory',
  file: 'file',
  function_def: 'function definition',
  call_site: 'function call',
  class_def: 'class definition',
  module: 'module',
  unknown: 'other file',
};
