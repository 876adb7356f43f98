"""Similarity and cohesion metrics.

The similarity score between two releases is computed from the number of
add/remove operations needed to turn one architecture into the other,
normalized by the cost of building both from scratch:

    score = (1 - mto / (aco_i + aco_j)) * 100

For the directory-based variant, components are directories and their
entities are the files they directly contain. The function, class, and
module variants are components-only: their entity terms are zero by
definition. Cohesion is the classic LCOM4 connected-component count over
a class's own methods.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .model import Entity, EntityKind, MethodFacts, RelationKind, Snapshot
from .views import UnknownScopeError, _in_scope


class Variant(str, enum.Enum):
    ARCHITECTURAL = "architectural"
    FUNCTIONAL = "functional"
    CLASS = "class"
    MODULE = "module"


@dataclass(frozen=True)
class ArchitectureAbstraction:
    variant: Variant
    components: dict[str, frozenset[str]] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not self.components


@dataclass(frozen=True)
class SimilarityBreakdown:
    add_components: int
    rem_components: int
    add_entities: int
    rem_entities: int
    change_ops: int  # operations turning one architecture into the other
    build_ops_base: int  # operations building the base architecture from scratch
    build_ops_head: int
    score: float

    def as_dict(self) -> dict:
        return {
            "addC": self.add_components,
            "remC": self.rem_components,
            "addE": self.add_entities,
            "remE": self.rem_entities,
            "mto": self.change_ops,
            "aco_i": self.build_ops_base,
            "aco_j": self.build_ops_head,
            "score": self.score,
        }


@dataclass(frozen=True)
class SimilarityReport:
    base_tag: str
    head_tag: str
    scope: str
    architectural: SimilarityBreakdown
    functional: SimilarityBreakdown
    class_: SimilarityBreakdown
    module: SimilarityBreakdown

    def breakdown(self, variant: Variant) -> SimilarityBreakdown:
        return {
            Variant.ARCHITECTURAL: self.architectural,
            Variant.FUNCTIONAL: self.functional,
            Variant.CLASS: self.class_,
            Variant.MODULE: self.module,
        }[variant]

    def as_dict(self) -> dict:
        return {
            "base_tag": self.base_tag,
            "head_tag": self.head_tag,
            "scope": self.scope,
            "architectural": self.architectural.as_dict(),
            "functional": self.functional.as_dict(),
            "class": self.class_.as_dict(),
            "module": self.module.as_dict(),
        }


@dataclass(frozen=True)
class CohesionEntry:
    class_qualified_name: str
    lcom4: int
    method_count: int


@dataclass(frozen=True)
class CohesionReport:
    tag: str
    entries: tuple[CohesionEntry, ...]

    def as_dict(self) -> dict:
        return {
            "tag": self.tag,
            "entries": [
                {
                    "class": e.class_qualified_name,
                    "lcom4": e.lcom4,
                    "method_count": e.method_count,
                }
                for e in self.entries
            ],
        }


def abstract_architecture(
    s: Snapshot, scope: str, variant: Variant, *, allow_missing_scope: bool = False
) -> ArchitectureAbstraction:
    """Project a snapshot onto the component/entity sets a similarity
    computation consumes. An absent scope yields the empty architecture
    when `allow_missing_scope` is set (the vacuous side of a comparison)."""
    try:
        _check_scope(s, scope)
    except UnknownScopeError:
        if allow_missing_scope:
            return ArchitectureAbstraction(variant=variant)
        raise
    components: dict[str, frozenset[str]] = {}
    if variant == Variant.ARCHITECTURAL:
        file_kinds = {EntityKind.FILE, EntityKind.UNKNOWN}
        dirs = [
            e for e in s.entities
            if e.kind == EntityKind.DIRECTORY and _in_scope(e.path, scope)
        ]
        files_by_dir: dict[str, set[str]] = {d.path: set() for d in dirs}
        for e in s.entities:
            if e.kind in file_kinds:
                parent = e.path.rsplit("/", 1)[0] if "/" in e.path else ""
                if parent in files_by_dir:
                    files_by_dir[parent].add(e.path)
        components = {path: frozenset(files) for path, files in files_by_dir.items()}
    elif variant == Variant.FUNCTIONAL:
        components = {
            e.qualified_name: frozenset()
            for e in s.entities
            if e.kind == EntityKind.FUNCTION_DEF and _in_scope(e.path, scope)
        }
    elif variant == Variant.CLASS:
        components = {
            e.qualified_name: frozenset()
            for e in s.entities
            if e.kind == EntityKind.CLASS_DEF and _in_scope(e.path, scope)
        }
    elif variant == Variant.MODULE:
        in_scope_files = {
            e.id for e in s.entities
            if e.kind == EntityKind.FILE and _in_scope(e.path, scope)
        }
        for r in s.relations_of_kind(RelationKind.IMPORTS):
            if r.src in in_scope_files:
                components[s.entity_by_id(r.dst).qualified_name] = frozenset()
    return ArchitectureAbstraction(variant=variant, components=components)


def _check_scope(s: Snapshot, scope: str) -> None:
    if scope == "":
        return
    if not any(
        e.kind == EntityKind.DIRECTORY and e.path == scope for e in s.entities
    ):
        raise UnknownScopeError(f"unknown scope: {scope}")


def a2a(ai: ArchitectureAbstraction, aj: ArchitectureAbstraction) -> SimilarityBreakdown:
    """Add/remove operation counts and the resulting similarity score."""
    if ai.variant != aj.variant:
        raise ValueError(f"variant mismatch: {ai.variant} vs {aj.variant}")
    keys_i = set(ai.components)
    keys_j = set(aj.components)
    add_c = len(keys_j - keys_i)
    rem_c = len(keys_i - keys_j)
    add_e = 0
    rem_e = 0
    if ai.variant == Variant.ARCHITECTURAL:
        for key in keys_j - keys_i:
            add_e += len(aj.components[key])
        for key in keys_i - keys_j:
            rem_e += len(ai.components[key])
        for key in keys_i & keys_j:
            add_e += len(aj.components[key] - ai.components[key])
            rem_e += len(ai.components[key] - aj.components[key])
    mto = add_c + rem_c + add_e + rem_e
    aco_i = len(keys_i) + sum(len(v) for v in ai.components.values())
    aco_j = len(keys_j) + sum(len(v) for v in aj.components.values())
    if aco_i + aco_j == 0:
        score = 100.0
    else:
        score = (1 - mto / (aco_i + aco_j)) * 100
    return SimilarityBreakdown(
        add_components=add_c,
        rem_components=rem_c,
        add_entities=add_e,
        rem_entities=rem_e,
        change_ops=mto,
        build_ops_base=aco_i,
        build_ops_head=aco_j,
        score=score,
    )


def similarity_report(s_base: Snapshot, s_head: Snapshot, scope: str = "") -> SimilarityReport:
    """All four similarity variants over one scope. A scope missing from
    one snapshot counts as the empty architecture on that side; a scope
    missing from both is an error."""
    base_has = _has_scope(s_base, scope)
    head_has = _has_scope(s_head, scope)
    if not base_has and not head_has:
        raise UnknownScopeError(f"unknown scope: {scope}")
    breakdowns = {}
    for variant in Variant:
        ai = abstract_architecture(s_base, scope, variant, allow_missing_scope=True)
        aj = abstract_architecture(s_head, scope, variant, allow_missing_scope=True)
        breakdowns[variant] = a2a(ai, aj)
    return SimilarityReport(
        base_tag=s_base.tag.name,
        head_tag=s_head.tag.name,
        scope=scope,
        architectural=breakdowns[Variant.ARCHITECTURAL],
        functional=breakdowns[Variant.FUNCTIONAL],
        class_=breakdowns[Variant.CLASS],
        module=breakdowns[Variant.MODULE],
    )


def _has_scope(s: Snapshot, scope: str) -> bool:
    try:
        _check_scope(s, scope)
    except UnknownScopeError:
        return False
    return True


def lcom4(methods: list[MethodFacts], method_names: dict[int, str]) -> int:
    """Connected components of the method graph: methods link when they
    share an accessed attribute or one names the other as a sibling call."""
    if not methods:
        return 0
    ids = [m.method for m in methods]
    parent = {i: i for i in ids}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    name_to_id = {method_names[m.method]: m.method for m in methods}
    for i, m1 in enumerate(methods):
        for called in m1.called_sibling_methods:
            if called in name_to_id:
                union(m1.method, name_to_id[called])
        for m2 in methods[i + 1:]:
            if m1.accessed_attributes & m2.accessed_attributes:
                union(m1.method, m2.method)
    return len({find(i) for i in ids})


def cohesion_report(s: Snapshot) -> CohesionReport:
    """LCOM4 per class, ordered by class qualified name."""
    facts_by_method = {mf.method: mf for mf in s.method_facts}
    methods_of_class: dict[int, list[int]] = {}
    for r in s.relations_of_kind(RelationKind.DEFINES):
        src = s.entity_by_id(r.src)
        dst = s.entity_by_id(r.dst)
        if src.kind == EntityKind.CLASS_DEF and dst.kind == EntityKind.FUNCTION_DEF:
            methods_of_class.setdefault(src.id, []).append(dst.id)
    entries = []
    for cls in s.entities_of_kind(EntityKind.CLASS_DEF):
        method_ids = methods_of_class.get(cls.id, [])
        methods = [
            facts_by_method.get(mid, MethodFacts(method=mid)) for mid in method_ids
        ]
        names = {mid: s.entity_by_id(mid).name for mid in method_ids}
        entries.append(
            CohesionEntry(
                class_qualified_name=cls.qualified_name,
                lcom4=lcom4(methods, names),
                method_count=len(method_ids),
            )
        )
    entries.sort(key=lambda e: e.class_qualified_name)
    return CohesionReport(tag=s.tag.name, entries=tuple(entries))
