"""Projection of a Snapshot into the four renderable view graphs.

Every view is scoped to a directory subtree. Edges that cross the scope
boundary keep their out-of-scope endpoint as an external stub node, so
the interaction signal survives narrowing the scope.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import Entity, EntityKind, RelationKind, Snapshot

INTEGRATED_LEGEND = [
    EntityKind.FILE,
    EntityKind.FUNCTION_DEF,
    EntityKind.CALL_SITE,
    EntityKind.CLASS_DEF,
    EntityKind.MODULE,
]


class ViewKind(str, enum.Enum):
    DIRECTORY = "directory"
    CALL = "call"
    COLLABORATION = "collaboration"
    INTEGRATED = "integrated"


class UnknownScopeError(Exception):
    pass


@dataclass(frozen=True)
class ViewNode:
    id: int
    kind: EntityKind
    label: str
    qualified_name: str
    path: str
    is_external: bool = False


@dataclass(frozen=True)
class ViewEdge:
    src: int
    dst: int
    kind: RelationKind


@dataclass(frozen=True)
class ViewGraph:
    view: ViewKind
    scope: str
    nodes: tuple[ViewNode, ...]
    edges: tuple[ViewEdge, ...]
    legend: tuple[EntityKind, ...]


def _check_scope(s: Snapshot, scope: str) -> None:
    if scope == "":
        return
    for e in s.entities:
        if e.kind == EntityKind.DIRECTORY and e.path == scope:
            return
    raise UnknownScopeError(f"unknown scope: {scope}")


def _in_scope(path: str, scope: str) -> bool:
    return scope == "" or path == scope or path.startswith(scope + "/")


def _node(e: Entity, external: bool = False) -> ViewNode:
    return ViewNode(
        id=e.id,
        kind=e.kind,
        label=e.name,
        qualified_name=e.qualified_name,
        path=e.path,
        is_external=external,
    )


def _legend(nodes: list[ViewNode]) -> tuple[EntityKind, ...]:
    seen: list[EntityKind] = []
    for kind in EntityKind:
        if any(n.kind == kind for n in nodes):
            seen.append(kind)
    return tuple(seen)


def directory_view(s: Snapshot, scope: str = "") -> ViewGraph:
    """Directories and files under `scope`, connected by containment."""
    _check_scope(s, scope)
    keep_kinds = {EntityKind.DIRECTORY, EntityKind.FILE, EntityKind.UNKNOWN}
    nodes = [_node(e) for e in s.entities if e.kind in keep_kinds and _in_scope(e.path, scope)]
    ids = {n.id for n in nodes}
    edges = [
        ViewEdge(r.src, r.dst, r.kind)
        for r in s.relations_of_kind(RelationKind.CONTAINS)
        if r.src in ids and r.dst in ids
    ]
    return ViewGraph(
        view=ViewKind.DIRECTORY, scope=scope, nodes=tuple(nodes), edges=tuple(edges),
        legend=_legend(nodes),
    )


def call_view(s: Snapshot, scope: str = "") -> ViewGraph:
    """Files, function definitions, and call sites under `scope`.

    A method's defines edge is re-rooted at its file, because class nodes
    are not part of this view.
    """
    _check_scope(s, scope)
    keep_kinds = {EntityKind.FILE, EntityKind.FUNCTION_DEF, EntityKind.CALL_SITE}
    nodes = {e.id: _node(e) for e in s.entities
             if e.kind in keep_kinds and _in_scope(e.path, scope)}
    file_by_path = {e.path: e.id for e in s.entities if e.kind == EntityKind.FILE}
    edges: list[ViewEdge] = []
    for r in s.relations:
        if r.kind == RelationKind.DEFINES:
            dst = s.entity_by_id(r.dst)
            if dst.kind != EntityKind.FUNCTION_DEF or dst.id not in nodes:
                continue
            src = s.entity_by_id(r.src)
            src_id = src.id if src.kind == EntityKind.FILE else file_by_path.get(dst.path)
            if src_id in nodes:
                edges.append(ViewEdge(src_id, dst.id, RelationKind.DEFINES))
        elif r.kind == RelationKind.CALLS:
            if r.src in nodes and r.dst in nodes:
                edges.append(ViewEdge(r.src, r.dst, r.kind))
        elif r.kind == RelationKind.RESOLVES_TO:
            if r.src not in nodes:
                continue
            if r.dst not in nodes:
                target = s.entity_by_id(r.dst)
                nodes[target.id] = _node(target, external=True)
            edges.append(ViewEdge(r.src, r.dst, r.kind))
    ordered = sorted(nodes.values(), key=lambda n: n.id)
    return ViewGraph(
        view=ViewKind.CALL, scope=scope, nodes=tuple(ordered), edges=tuple(edges),
        legend=_legend(ordered),
    )


def collaboration_view(s: Snapshot, scope: str = "") -> ViewGraph:
    """Files, class definitions, and internal modules under `scope`.

    Modules have no path of their own; they attach to the scope of any
    file importing them.
    """
    _check_scope(s, scope)
    keep_kinds = {EntityKind.FILE, EntityKind.CLASS_DEF}
    nodes = {e.id: _node(e) for e in s.entities
             if e.kind in keep_kinds and _in_scope(e.path, scope)}
    # Modules enter through in-scope importers.
    import_edges = []
    for r in s.relations_of_kind(RelationKind.IMPORTS):
        if r.src in nodes:
            target = s.entity_by_id(r.dst)
            nodes.setdefault(target.id, _node(target))
            import_edges.append(ViewEdge(r.src, r.dst, r.kind))
    edges: list[ViewEdge] = []
    for r in s.relations:
        if r.kind == RelationKind.DEFINES:
            if r.src in nodes and r.dst in nodes:
                dst = s.entity_by_id(r.dst)
                if dst.kind == EntityKind.CLASS_DEF:
                    edges.append(ViewEdge(r.src, r.dst, r.kind))
        elif r.kind in (RelationKind.INHERITS, RelationKind.AGGREGATES):
            if r.src not in nodes:
                continue
            if r.dst not in nodes:
                target = s.entity_by_id(r.dst)
                nodes[target.id] = _node(target, external=True)
            edges.append(ViewEdge(r.src, r.dst, r.kind))
    edges.extend(import_edges)
    ordered = sorted(nodes.values(), key=lambda n: n.id)
    return ViewGraph(
        view=ViewKind.COLLABORATION, scope=scope, nodes=tuple(ordered),
        edges=tuple(edges), legend=_legend(ordered),
    )


def integrated_view(s: Snapshot, scope: str = "") -> ViewGraph:
    """Union of the call and collaboration views over the same scope."""
    call = call_view(s, scope)
    collab = collaboration_view(s, scope)
    nodes: dict[int, ViewNode] = {}
    for n in list(call.nodes) + list(collab.nodes):
        prior = nodes.get(n.id)
        if prior is None or (prior.is_external and not n.is_external):
            nodes[n.id] = n
    edge_set: dict[tuple[int, int, RelationKind], ViewEdge] = {}
    for e in list(call.edges) + list(collab.edges):
        edge_set[(e.src, e.dst, e.kind)] = e
    ordered = sorted(nodes.values(), key=lambda n: n.id)
    return ViewGraph(
        view=ViewKind.INTEGRATED,
        scope=scope,
        nodes=tuple(ordered),
        edges=tuple(sorted(edge_set.values(), key=lambda e: (e.src, e.dst, e.kind.value))),
        legend=tuple(INTEGRATED_LEGEND),
    )


VIEW_BUILDERS = {
    ViewKind.DIRECTORY: directory_view,
    ViewKind.CALL: call_view,
    ViewKind.COLLABORATION: collaboration_view,
    ViewKind.INTEGRATED: integrated_view,
}


def build_view(s: Snapshot, view: ViewKind, scope: str = "") -> ViewGraph:
    return VIEW_BUILDERS[view](s, scope)
