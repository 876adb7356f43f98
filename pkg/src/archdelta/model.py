"""Core data model: entities, relations, and snapshots.

A Snapshot is the complete extracted model of one repository release:
every directory, file, function definition, call site, class definition
and internal module, plus the typed relations between them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime


class EntityKind(str, enum.Enum):
    DIRECTORY = "directory"
    FILE = "file"
    FUNCTION_DEF = "function_def"
    CALL_SITE = "call_site"
    CLASS_DEF = "class_def"
    MODULE = "module"
    UNKNOWN = "unknown"


class RelationKind(str, enum.Enum):
    CONTAINS = "contains"
    DEFINES = "defines"
    CALLS = "calls"
    RESOLVES_TO = "resolves_to"
    INHERITS = "inherits"
    AGGREGATES = "aggregates"
    IMPORTS = "imports"


# Admissible (src kind, dst kind) pairs per relation kind.
RELATION_SCHEMA: dict[RelationKind, set[tuple[EntityKind, EntityKind]]] = {
    RelationKind.CONTAINS: {
        (EntityKind.DIRECTORY, EntityKind.DIRECTORY),
        (EntityKind.DIRECTORY, EntityKind.FILE),
        (EntityKind.DIRECTORY, EntityKind.UNKNOWN),
    },
    RelationKind.DEFINES: {
        (EntityKind.FILE, EntityKind.FUNCTION_DEF),
        (EntityKind.FILE, EntityKind.CLASS_DEF),
        (EntityKind.CLASS_DEF, EntityKind.FUNCTION_DEF),
    },
    RelationKind.CALLS: {
        (EntityKind.FUNCTION_DEF, EntityKind.CALL_SITE),
        (EntityKind.FILE, EntityKind.CALL_SITE),
    },
    RelationKind.RESOLVES_TO: {
        (EntityKind.CALL_SITE, EntityKind.FUNCTION_DEF),
    },
    RelationKind.INHERITS: {
        (EntityKind.CLASS_DEF, EntityKind.CLASS_DEF),
        (EntityKind.CLASS_DEF, EntityKind.MODULE),
    },
    RelationKind.AGGREGATES: {
        (EntityKind.CLASS_DEF, EntityKind.CLASS_DEF),
    },
    RelationKind.IMPORTS: {
        (EntityKind.FILE, EntityKind.MODULE),
    },
}


@dataclass(frozen=True)
class ReleaseTag:
    """A git tag treated as a released version."""

    name: str
    commit_id: str
    timestamp: datetime


@dataclass(frozen=True)
class Entity:
    id: int
    kind: EntityKind
    name: str
    qualified_name: str
    path: str = ""
    span: tuple[int, int] | None = None


@dataclass(frozen=True)
class Relation:
    src: int
    dst: int
    kind: RelationKind


@dataclass(frozen=True)
class MethodFacts:
    """Per-method inputs for cohesion: receiver attribute accesses and
    sibling-method calls through the instance receiver."""

    method: int
    accessed_attributes: frozenset[str] = frozenset()
    called_sibling_methods: frozenset[str] = frozenset()


class ModelError(Exception):
    """A snapshot violated referential closure or kind discipline."""


@dataclass(frozen=True)
class Snapshot:
    repo_id: str
    tag: ReleaseTag
    entities: tuple[Entity, ...]
    relations: tuple[Relation, ...]
    method_facts: tuple[MethodFacts, ...] = ()
    parse_failures: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        # Canonical ordering, so snapshots compare equal regardless of build order.
        object.__setattr__(self, "entities", tuple(sorted(self.entities, key=lambda e: e.id)))
        object.__setattr__(
            self,
            "relations",
            tuple(sorted(self.relations, key=lambda r: (r.src, r.dst, r.kind.value))),
        )
        object.__setattr__(
            self, "method_facts", tuple(sorted(self.method_facts, key=lambda m: m.method))
        )
        object.__setattr__(self, "parse_failures", tuple(sorted(self.parse_failures)))
        validate_snapshot(self)

    def entity_by_id(self, entity_id: int) -> Entity:
        return self._by_id[entity_id]

    @property
    def _by_id(self) -> dict[int, Entity]:
        cached = self.__dict__.get("_by_id_cache")
        if cached is None:
            cached = {e.id: e for e in self.entities}
            self.__dict__["_by_id_cache"] = cached
        return cached

    def entities_of_kind(self, kind: EntityKind) -> list[Entity]:
        return [e for e in self.entities if e.kind == kind]

    def relations_of_kind(self, kind: RelationKind) -> list[Relation]:
        return [r for r in self.relations if r.kind == kind]


def validate_snapshot(s: Snapshot) -> None:
    """Check referential closure and relation kind discipline; raise ModelError."""
    by_id = {e.id: e for e in s.entities}
    if len(by_id) != len(s.entities):
        raise ModelError("duplicate entity ids")
    seen_quals: set[tuple[EntityKind, str]] = set()
    for e in s.entities:
        key = (e.kind, e.qualified_name)
        if key in seen_quals:
            raise ModelError(f"duplicate qualified name {key}")
        seen_quals.add(key)
    for r in s.relations:
        if r.src not in by_id or r.dst not in by_id:
            raise ModelError(f"dangling relation {r}")
        if r.src == r.dst:
            raise ModelError(f"self-loop {r}")
        pair = (by_id[r.src].kind, by_id[r.dst].kind)
        if pair not in RELATION_SCHEMA[r.kind]:
            raise ModelError(f"relation {r.kind.value} does not admit {pair}")
    method_ids = {e.id for e in s.entities if e.kind == EntityKind.FUNCTION_DEF}
    for mf in s.method_facts:
        if mf.method not in method_ids:
            raise ModelError(f"method facts for unknown method {mf.method}")
