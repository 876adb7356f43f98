"""Added/removed component lists between two releases for one view.

Matching is purely by stable key: a rename shows up as one removal plus
one addition. External stub nodes are rendering artifacts and never
appear in a diff.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Entity, EntityKind, Snapshot
from .views import UnknownScopeError, ViewKind, build_view


@dataclass(frozen=True)
class ComponentDiff:
    base_tag: str
    head_tag: str
    view: ViewKind
    scope: str
    added: tuple[tuple[EntityKind, str], ...]
    removed: tuple[tuple[EntityKind, str], ...]

    def as_dict(self) -> dict:
        return {
            "base_tag": self.base_tag,
            "head_tag": self.head_tag,
            "view": self.view.value,
            "scope": self.scope,
            "added": [[k.value, key] for k, key in self.added],
            "removed": [[k.value, key] for k, key in self.removed],
        }


def match_key(e: Entity) -> str:
    """Stable identity key used to match components across releases."""
    return e.qualified_name


def _view_keys(s: Snapshot, view: ViewKind, scope: str) -> set[tuple[EntityKind, str]]:
    try:
        graph = build_view(s, view, scope)
    except UnknownScopeError:
        return set()
    return {
        (n.kind, n.qualified_name) for n in graph.nodes if not n.is_external
    }


def component_diff(
    s_base: Snapshot, s_head: Snapshot, view: ViewKind, scope: str = ""
) -> ComponentDiff:
    """Components present in head but not base (added) and vice versa.

    A scope missing from one snapshot contributes no components on that
    side; missing from both is an error.
    """
    base_ok = _has_scope(s_base, scope)
    head_ok = _has_scope(s_head, scope)
    if not base_ok and not head_ok:
        raise UnknownScopeError(f"unknown scope: {scope}")
    base_keys = _view_keys(s_base, view, scope)
    head_keys = _view_keys(s_head, view, scope)
    added = sorted(head_keys - base_keys, key=lambda t: (t[0].value, t[1]))
    removed = sorted(base_keys - head_keys, key=lambda t: (t[0].value, t[1]))
    return ComponentDiff(
        base_tag=s_base.tag.name,
        head_tag=s_head.tag.name,
        view=view,
        scope=scope,
        added=tuple(added),
        removed=tuple(removed),
    )


def _has_scope(s: Snapshot, scope: str) -> bool:
    if scope == "":
        return True
    return any(
        e.kind == EntityKind.DIRECTORY and e.path == scope for e in s.entities
    )
