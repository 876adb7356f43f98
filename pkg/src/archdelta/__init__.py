"""archdelta: architecture recovery and release-to-release comparison
for Python projects, driven by git tags."""

from .model import (
    Entity,
    EntityKind,
    MethodFacts,
    Relation,
    RelationKind,
    ReleaseTag,
    Snapshot,
)

__all__ = [
    "Entity",
    "EntityKind",
    "MethodFacts",
    "Relation",
    "RelationKind",
    "ReleaseTag",
    "Snapshot",
]

__version__ = "0.1.0"
