"""On-disk cache for snapshots and reports, plus view-graph export.

Layout, per repository:

    <cache>/<repo_id>/manifest.json
    <cache>/<repo_id>/snapshot-<tag>.json
    <cache>/<repo_id>/cohesion-<tag>.json
    <cache>/<repo_id>/git            (bare clone, owned by repo ingestion)

All files carry a schema version and are written canonically (stable key
order and sorting), so identical inputs produce byte-identical files.
Writes land in a temp file first and are renamed into place.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from .model import (
    Entity,
    EntityKind,
    MethodFacts,
    Relation,
    RelationKind,
    ReleaseTag,
    Snapshot,
)
from .metrics import CohesionReport
from .views import ViewGraph

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

# Fixed legend mapping shared by DOT export and the UI. Non-subject files
# are grey; the rest are our stable choices.
KIND_COLORS = {
    EntityKind.DIRECTORY: "gold",
    EntityKind.FILE: "steelblue",
    EntityKind.FUNCTION_DEF: "green",
    EntityKind.CALL_SITE: "orange",
    EntityKind.CLASS_DEF: "purple",
    EntityKind.MODULE: "teal",
    EntityKind.UNKNOWN: "grey",
}


class StoreError(Exception):
    pass


class SchemaMismatchError(StoreError):
    pass


class SnapshotNotCachedError(StoreError):
    pass


@dataclass(frozen=True)
class CacheLayout:
    root: Path

    def repo_dir(self, repo_id: str) -> Path:
        return self.root / repo_id

    def manifest_path(self, repo_id: str) -> Path:
        return self.repo_dir(repo_id) / "manifest.json"

    def snapshot_path(self, repo_id: str, tag_name: str) -> Path:
        return self.repo_dir(repo_id) / f"snapshot-{_safe_tag(tag_name)}.json"

    def cohesion_path(self, repo_id: str, tag_name: str) -> Path:
        return self.repo_dir(repo_id) / f"cohesion-{_safe_tag(tag_name)}.json"

    def repo_ids(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(
            p.name for p in self.root.iterdir() if (p / "manifest.json").exists()
        )


def _safe_tag(tag_name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "__", tag_name)


def _dump_canonical(payload: dict) -> bytes:
    return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode()


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)


def snapshot_to_dict(s: Snapshot) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "repo_id": s.repo_id,
        "tag": {
            "name": s.tag.name,
            "commit_id": s.tag.commit_id,
            "timestamp": s.tag.timestamp.isoformat(),
        },
        "entities": [
            {
                "id": e.id,
                "kind": e.kind.value,
                "name": e.name,
                "qualified_name": e.qualified_name,
                "path": e.path,
                "span": list(e.span) if e.span else None,
            }
            for e in sorted(s.entities, key=lambda e: e.id)
        ],
        "relations": [
            {"src": r.src, "dst": r.dst, "kind": r.kind.value}
            for r in sorted(s.relations, key=lambda r: (r.src, r.dst, r.kind.value))
        ],
        "method_facts": [
            {
                "method": mf.method,
                "accessed_attributes": sorted(mf.accessed_attributes),
                "called_sibling_methods": sorted(mf.called_sibling_methods),
            }
            for mf in sorted(s.method_facts, key=lambda mf: mf.method)
        ],
        "parse_failures": [list(p) for p in sorted(s.parse_failures)],
    }


def snapshot_from_dict(payload: dict) -> Snapshot:
    try:
        version = payload["schema_version"]
        if version != SCHEMA_VERSION:
            raise SchemaMismatchError(
                f"schema version {version} != supported {SCHEMA_VERSION}"
            )
        tag = ReleaseTag(
            name=payload["tag"]["name"],
            commit_id=payload["tag"]["commit_id"],
            timestamp=datetime.fromisoformat(payload["tag"]["timestamp"]),
        )
        entities = tuple(
            Entity(
                id=e["id"],
                kind=EntityKind(e["kind"]),
                name=e["name"],
                qualified_name=e["qualified_name"],
                path=e["path"],
                span=tuple(e["span"]) if e["span"] else None,
            )
            for e in payload["entities"]
        )
        relations = tuple(
            Relation(src=r["src"], dst=r["dst"], kind=RelationKind(r["kind"]))
            for r in payload["relations"]
        )
        method_facts = tuple(
            MethodFacts(
                method=m["method"],
                accessed_attributes=frozenset(m["accessed_attributes"]),
                called_sibling_methods=frozenset(m["called_sibling_methods"]),
            )
            for m in payload["method_facts"]
        )
        parse_failures = tuple(tuple(p) for p in payload["parse_failures"])
    except SchemaMismatchError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise StoreError(f"corrupt payload: {exc}") from exc
    return Snapshot(
        repo_id=payload["repo_id"],
        tag=tag,
        entities=entities,
        relations=relations,
        method_facts=method_facts,
        parse_failures=parse_failures,
    )


def save_snapshot(s: Snapshot, cache: CacheLayout) -> Path:
    path = cache.snapshot_path(s.repo_id, s.tag.name)
    _atomic_write(path, _dump_canonical(snapshot_to_dict(s)))
    return path


def load_snapshot(cache: CacheLayout, repo_id: str, tag_name: str) -> Snapshot:
    path = cache.snapshot_path(repo_id, tag_name)
    if not path.exists():
        raise SnapshotNotCachedError(f"snapshot not cached: {repo_id} @ {tag_name}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise StoreError(f"corrupt payload: {exc}") from exc
    if not isinstance(payload, dict):
        raise StoreError("corrupt payload: not an object")
    return snapshot_from_dict(payload)


def save_cohesion(report: CohesionReport, cache: CacheLayout, repo_id: str) -> Path:
    path = cache.cohesion_path(repo_id, report.tag)
    payload = {"schema_version": SCHEMA_VERSION, **report.as_dict()}
    _atomic_write(path, _dump_canonical(payload))
    return path


def load_cohesion(cache: CacheLayout, repo_id: str, tag_name: str) -> dict:
    path = cache.cohesion_path(repo_id, tag_name)
    if not path.exists():
        raise SnapshotNotCachedError(f"cohesion not cached: {repo_id} @ {tag_name}")
    payload = json.loads(path.read_text())
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise SchemaMismatchError("cohesion file schema mismatch")
    return payload


def save_manifest(
    cache: CacheLayout, repo_id: str, locator: str, tags: list[ReleaseTag]
) -> Path:
    path = cache.manifest_path(repo_id)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": TOOL_VERSION,
        "repo_id": repo_id,
        "locator": locator,
        "tags": [
            {
                "name": t.name,
                "commit_id": t.commit_id,
                "timestamp": t.timestamp.isoformat(),
            }
            for t in tags
        ],
    }
    _atomic_write(path, _dump_canonical(payload))
    return path


def load_manifest(cache: CacheLayout, repo_id: str) -> dict:
    path = cache.manifest_path(repo_id)
    if not path.exists():
        raise StoreError(f"no manifest for repo: {repo_id}")
    payload = json.loads(path.read_text())
    if payload.get("schema_version") != SCHEMA_VERSION:
        raise SchemaMismatchError("manifest schema mismatch")
    return payload


def view_to_dict(g: ViewGraph) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "view": g.view.value,
        "scope": g.scope,
        "legend": [
            {"kind": k.value, "color": KIND_COLORS[k]} for k in g.legend
        ],
        "nodes": [
            {
                "id": n.id,
                "kind": n.kind.value,
                "label": n.label,
                "qualified_name": n.qualified_name,
                "path": n.path,
                "is_external": n.is_external,
            }
            for n in sorted(g.nodes, key=lambda n: n.id)
        ],
        "edges": [
            {"src": e.src, "dst": e.dst, "kind": e.kind.value}
            for e in sorted(g.edges, key=lambda e: (e.src, e.dst, e.kind.value))
        ],
    }


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def view_to_dot(g: ViewGraph) -> str:
    lines = [f'digraph "{_dot_escape(g.view.value)}" {{']
    for n in sorted(g.nodes, key=lambda n: n.id):
        attrs = [
            f'label="{_dot_escape(n.label)}"',
            f'tooltip="{_dot_escape(n.qualified_name)}"',
            "style=" + ('"filled,dashed"' if n.is_external else "filled"),
            f'fillcolor="{KIND_COLORS[n.kind]}"',
            f'kind="{n.kind.value}"',
        ]
        lines.append(f'  n{n.id} [{", ".join(attrs)}];')
    for e in sorted(g.edges, key=lambda e: (e.src, e.dst, e.kind.value)):
        lines.append(f'  n{e.src} -> n{e.dst} [label="{e.kind.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_view(g: ViewGraph, fmt: str = "json") -> bytes:
    if fmt == "json":
        return _dump_canonical(view_to_dict(g))
    if fmt == "dot":
        return view_to_dot(g).encode()
    raise ValueError(f"unknown export format: {fmt}")
