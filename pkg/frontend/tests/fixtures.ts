/** Hand-written payloads shaped exactly like the HTTP API's responses. */

import type { DiffPayload, TreeDirectory, ViewPayload } from '../src/types';

export const DIRECTORY_VIEW: ViewPayload = {
  schema_version: 1,
  view: 'directory',
  scope: '',
  legend: [
    { kind: 'directory', color: 'gold' },
    { kind: 'file', color: 'steelblue' },
    { kind: 'unknown', color: 'grey' },
  ],
  nodes: [
    { id: 0, kind: 'directory', label: '.', qualified_name: '', path: '', is_external: false },
    { id: 1, kind: 'file', label: 'app.py', qualified_name: 'app.py', path: 'app.py', is_external: false },
    { id: 2, kind: 'directory', label: 'pkg', qualified_name: 'pkg', path: 'pkg', is_external: false },
    { id: 3, kind: 'file', label: 'shapes.py', qualified_name: 'pkg/shapes.py', path: 'pkg/shapes.py', is_external: false },
    { id: 4, kind: 'unknown', label: 'README.md', qualified_name: 'README.md', path: 'README.md', is_external: false },
  ],
  edges: [
    { src: 0, dst: 1, kind: 'contains' },
    { src: 0, dst: 2, kind: 'contains' },
    { src: 0, dst: 4, kind: 'contains' },
    { src: 2, dst: 3, kind: 'contains' },
  ],
};

export const CALL_VIEW: ViewPayload = {
  schema_version: 1,
  view: 'call',
  scope: 'pkg',
  legend: [
    { kind: 'file', color: 'steelblue' },
    { kind: 'function_def', color: 'green' },
    { kind: 'call_site', color: 'orange' },
  ],
  nodes: [
    { id: 3, kind: 'file', label: 'shapes.py', qualified_name: 'pkg/shapes.py', path: 'pkg/shapes.py', is_external: false },
    { id: 7, kind: 'function_def', label: 'describe', qualified_name: 'pkg/shapes.py::Shape.describe', path: 'pkg/shapes.py', is_external: false },
    { id: 8, kind: 'call_site', label: 'self.label', qualified_name: 'pkg/shapes.py::Shape.describe::self.label#1', path: 'pkg/shapes.py', is_external: false },
    { id: 9, kind: 'function_def', label: 'fmt', qualified_name: 'helpers.py::fmt', path: 'helpers.py', is_external: true },
  ],
  edges: [
    { src: 3, dst: 7, kind: 'defines' },
    { src: 7, dst: 8, kind: 'calls' },
    { src: 8, dst: 9, kind: 'resolves_to' },
  ],
};

export const DIFF: DiffPayload = {
  schema_version: 1,
  diff: {
    base_tag: 'v1',
    head_tag: 'v2',
    view: 'directory',
    scope: '',
    added: [
      ['directory', 'newpkg'],
      ['file', 'newpkg/one.py'],
    ],
    removed: [['file', 'old.py']],
  },
  similarity: {
    base_tag: 'v1',
    head_tag: 'v2',
    scope: '',
    architectural: { addC: 1, remC: 0, addE: 2, remE: 1, mto: 4, aco_i: 8, aco_j: 11, score: 78.94736842105263 },
    functional: { addC: 1, remC: 0, addE: 0, remE: 0, mto: 1, aco_i: 2, aco_j: 3, score: 80 },
    class: { addC: 0, remC: 0, addE: 0, remE: 0, mto: 0, aco_i: 1, aco_j: 1, score: 100 },
    module: { addC: 0, remC: 1, addE: 0, remE: 0, mto: 1, aco_i: 1, aco_j: 0, score: 0 },
  },
};

export const TREE: TreeDirectory = {
  path: '',
  directories: [
    {
      path: 'pkg',
      directories: [],
      files: [{ path: 'pkg/shapes.py', kind: 'file' }],
    },
  ],
  files: [
    { path: 'app.py', kind: 'file' },
    { path: 'README.md', kind: 'unknown' },
  ],
};
