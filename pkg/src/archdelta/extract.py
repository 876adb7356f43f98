"""AST fact extraction and reference resolution for Python source trees.

Per-file extraction is pure: it turns one source file into symbolic facts
(function/class definitions, call sites, imports, per-method receiver
accesses). Resolution is a second, whole-snapshot pass that links call
sites to definitions, inheritance bases to classes or internal modules,
and detects aggregation between classes.
"""

from __future__ import annotations

import ast
import logging
from dataclasses import dataclass, field

from .model import (
    Entity,
    EntityKind,
    MethodFacts,
    Relation,
    RelationKind,
    ReleaseTag,
    Snapshot,
)
from .repo import FileTree

logger = logging.getLogger(__name__)

SUBJECT_SUFFIX = ".py"


@dataclass
class FunctionFact:
    qualname: str  # dotted within the file, e.g. "C.m" or "outer.inner"
    name: str
    span: tuple[int, int]
    owner_class: str | None = None  # dotted qualname of the defining class
    enclosing_function: str | None = None


@dataclass
class ClassFact:
    qualname: str
    name: str
    span: tuple[int, int]
    bases: list[str] = field(default_factory=list)
    class_level_instantiations: list[str] = field(default_factory=list)


@dataclass
class CallFact:
    scope: str | None  # dotted qualname of enclosing function def; None = module level
    callee: str
    ordinal: int  # 1-based per (scope, callee text), source order
    line: int
    owner_class: str | None = None  # set when the call sits inside a method


@dataclass
class ImportFact:
    module: str  # dotted name as imported, relative imports absolutized
    alias: str  # name bound in the importing file
    attr: str | None = None  # from-import member, if any


@dataclass
class RawMethodFacts:
    method_qualname: str
    accessed_attributes: set[str] = field(default_factory=set)
    called_sibling_methods: set[str] = field(default_factory=set)


@dataclass
class AggregationCandidate:
    owner_class: str  # dotted class qualname
    target: str  # textual callee of the instantiation


@dataclass
class FileFacts:
    path: str
    functions: list[FunctionFact] = field(default_factory=list)
    classes: list[ClassFact] = field(default_factory=list)
    calls: list[CallFact] = field(default_factory=list)
    imports: list[ImportFact] = field(default_factory=list)
    method_facts: list[RawMethodFacts] = field(default_factory=list)
    aggregations: list[AggregationCandidate] = field(default_factory=list)
    error: str | None = None
    notes: list[str] = field(default_factory=list)


def callee_text(func: ast.expr) -> str:
    """Textual name of a call's target; complex receivers collapse to <expr>."""
    if isinstance(func, ast.Name):
        return func.id
    if isinstance(func, ast.Attribute):
        return f"{callee_text(func.value)}.{func.attr}"
    return "<expr>"


def _receiver_name(node: ast.FunctionDef | ast.AsyncFunctionDef) -> str | None:
    for deco in node.decorator_list:
        if isinstance(deco, ast.Name) and deco.id == "staticmethod":
            return None
    args = node.args.posonlyargs + node.args.args
    return args[0].arg if args else None


class _FileVisitor:
    def __init__(self, facts: FileFacts) -> None:
        self.facts = facts
        self._ordinals: dict[tuple[str | None, str], int] = {}
        self._qualnames: set[str] = set()

    def visit_module(self, tree: ast.Module) -> None:
        for stmt in tree.body:
            self._visit(stmt, scope=None, class_qual=None, method=None, in_class_body=False)

    def _note_duplicate(self, qualname: str) -> None:
        if qualname in self._qualnames:
            self.facts.notes.append(f"duplicate definition of {qualname}; keeping last")
            self.facts.functions = [f for f in self.facts.functions if f.qualname != qualname]
            self.facts.classes = [c for c in self.facts.classes if c.qualname != qualname]
            self.facts.method_facts = [
                m for m in self.facts.method_facts if m.method_qualname != qualname
            ]
        self._qualnames.add(qualname)

    def _visit(
        self,
        node: ast.AST,
        scope: str | None,
        class_qual: str | None,
        method: RawMethodFacts | None,
        in_class_body: bool,
        receiver: str | None = None,
    ) -> None:
        if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            prefix = class_qual if in_class_body else scope
            qual = f"{prefix}.{node.name}" if prefix else node.name
            self._note_duplicate(qual)
            end = node.end_lineno or node.lineno
            self.facts.functions.append(
                FunctionFact(
                    qualname=qual,
                    name=node.name,
                    span=(node.lineno, end),
                    owner_class=class_qual if in_class_body else None,
                    enclosing_function=scope,
                )
            )
            inner_method = method
            inner_receiver = receiver
            if in_class_body:
                inner_method = RawMethodFacts(method_qualname=qual)
                self.facts.method_facts.append(inner_method)
                inner_receiver = _receiver_name(node)
            for deco in node.decorator_list:
                self._visit(deco, scope, class_qual, method, False, receiver)
            for child in node.body:
                self._visit(
                    child,
                    scope=qual,
                    class_qual=class_qual if in_class_body else class_qual,
                    method=inner_method,
                    in_class_body=False,
                    receiver=inner_receiver,
                )
            return

        if isinstance(node, ast.ClassDef):
            prefix = scope or (class_qual if in_class_body else None)
            qual = f"{prefix}.{node.name}" if prefix else node.name
            self._note_duplicate(qual)
            end = node.end_lineno or node.lineno
            fact = ClassFact(
                qualname=qual, name=node.name, span=(node.lineno, end),
                bases=[callee_text(b) for b in node.bases if not isinstance(b, ast.Starred)],
            )
            self.facts.classes.append(fact)
            for base in node.bases:
                self._visit(base, scope, class_qual, method, False, receiver)
            for child in node.body:
                if isinstance(child, (ast.Assign, ast.AnnAssign)):
                    value = child.value
                    if isinstance(value, ast.Call):
                        fact.class_level_instantiations.append(callee_text(value.func))
                self._visit(
                    child,
                    scope=scope,
                    class_qual=qual,
                    method=None,
                    in_class_body=True,
                    receiver=None,
                )
            return

        if isinstance(node, ast.Call):
            text = callee_text(node.func)
            key = (scope, text)
            ordinal = self._ordinals.get(key, 0) + 1
            self._ordinals[key] = ordinal
            self.facts.calls.append(
                CallFact(
                    scope=scope,
                    callee=text,
                    ordinal=ordinal,
                    line=node.lineno,
                    owner_class=class_qual if method is not None else None,
                )
            )
            if method is not None and receiver is not None:
                func = node.func
                if (
                    isinstance(func, ast.Attribute)
                    and isinstance(func.value, ast.Name)
                    and func.value.id == receiver
                ):
                    method.called_sibling_methods.add(func.attr)
                    for arg in node.args + [kw.value for kw in node.keywords]:
                        self._visit(arg, scope, class_qual, method, False, receiver)
                    return
            for child in ast.iter_child_nodes(node):
                self._visit(child, scope, class_qual, method, False, receiver)
            return

        if isinstance(node, ast.Attribute):
            if (
                method is not None
                and receiver is not None
                and isinstance(node.value, ast.Name)
                and node.value.id == receiver
            ):
                method.accessed_attributes.add(node.attr)
            for child in ast.iter_child_nodes(node):
                self._visit(child, scope, class_qual, method, False, receiver)
            return

        if isinstance(node, (ast.Assign, ast.AnnAssign, ast.AugAssign)):
            # Receiver-attribute instantiation marks aggregation between classes.
            if method is not None and class_qual is not None:
                value = getattr(node, "value", None)
                targets = node.targets if isinstance(node, ast.Assign) else [node.target]
                if isinstance(value, ast.Call):
                    for target in targets:
                        if (
                            isinstance(target, ast.Attribute)
                            and isinstance(target.value, ast.Name)
                            and receiver is not None
                            and target.value.id == receiver
                        ):
                            self.facts.aggregations.append(
                                AggregationCandidate(
                                    owner_class=class_qual,
                                    target=callee_text(value.func),
                                )
                            )
                            break
            for child in ast.iter_child_nodes(node):
                self._visit(child, scope, class_qual, method, in_class_body, receiver)
            return

        if isinstance(node, ast.Import):
            for name in node.names:
                bound = name.asname or name.name.split(".")[0]
                module = name.name if name.asname else name.name
                self.facts.imports.append(ImportFact(module=module, alias=bound))
            return

        if isinstance(node, ast.ImportFrom):
            base = node.module or ""
            if node.level:
                pkg_parts = _package_parts(self.facts.path)
                keep = pkg_parts[: len(pkg_parts) - (node.level - 1)]
                base = ".".join(keep + ([node.module] if node.module else []))
            for name in node.names:
                if name.name == "*":
                    self.facts.imports.append(ImportFact(module=base, alias="*"))
                    continue
                bound = name.asname or name.name
                self.facts.imports.append(
                    ImportFact(module=base, alias=bound, attr=name.name)
                )
            return

        for child in ast.iter_child_nodes(node):
            self._visit(child, scope, class_qual, method, in_class_body, receiver)


def _package_parts(path: str) -> list[str]:
    parts = path.split("/")[:-1]
    return parts


def extract_file_facts(path: str, source_text: str) -> FileFacts:
    """Parse one subject file into symbolic facts.

    Syntax errors are recorded on the result; the file still exists as an
    entity so tree-level metrics are unaffected.
    """
    facts = FileFacts(path=path)
    try:
        tree = ast.parse(source_text)
    except SyntaxError as exc:
        facts.error = f"{exc.msg} (line {exc.lineno})"
        return facts
    _FileVisitor(facts).visit_module(tree)
    return facts


# --- class-level aggregation sources are gathered during extraction; the
# --- remaining linking happens against the whole snapshot below.


@dataclass
class _NameTables:
    module_files: dict[str, str]  # dotted internal module name -> file path
    file_functions: dict[str, dict[str, str]]  # path -> {name: qualname}
    file_classes: dict[str, dict[str, str]]  # path -> {name: class qualname}
    class_methods: dict[tuple[str, str], dict[str, str]]  # (path, class qual) -> {name: qual}
    class_bases: dict[tuple[str, str], list[str]]
    nested: dict[tuple[str, str], dict[str, str]]  # (path, scope qual) -> {name: qual}
    imports: dict[str, dict[str, ImportFact]]  # path -> {alias: fact}


def _build_tables(all_facts: dict[str, FileFacts]) -> _NameTables:
    module_files: dict[str, str] = {}
    for path in all_facts:
        if path.endswith("/__init__.py"):
            module_files[path[: -len("/__init__.py")].replace("/", ".")] = path
        elif path == "__init__.py":
            continue
        else:
            module_files[path[: -len(SUBJECT_SUFFIX)].replace("/", ".")] = path

    file_functions: dict[str, dict[str, str]] = {}
    file_classes: dict[str, dict[str, str]] = {}
    class_methods: dict[tuple[str, str], dict[str, str]] = {}
    class_bases: dict[tuple[str, str], list[str]] = {}
    nested: dict[tuple[str, str], dict[str, str]] = {}
    imports: dict[str, dict[str, ImportFact]] = {}
    for path, facts in all_facts.items():
        file_functions[path] = {
            f.name: f.qualname
            for f in facts.functions
            if f.owner_class is None and f.enclosing_function is None
        }
        file_classes[path] = {c.name: c.qualname for c in facts.classes if "." not in c.qualname}
        for c in facts.classes:
            class_methods[(path, c.qualname)] = {
                f.name: f.qualname for f in facts.functions if f.owner_class == c.qualname
            }
            class_bases[(path, c.qualname)] = list(c.bases)
        for f in facts.functions:
            if f.enclosing_function is not None:
                nested.setdefault((path, f.enclosing_function), {})[f.name] = f.qualname
        imports[path] = {}
        for imp in facts.imports:
            imports[path][imp.alias] = imp
    return _NameTables(
        module_files=module_files,
        file_functions=file_functions,
        file_classes=file_classes,
        class_methods=class_methods,
        class_bases=class_bases,
        nested=nested,
        imports=imports,
    )


def _internal_module_for(tables: _NameTables, imp: ImportFact) -> str | None:
    """Dotted internal module an import refers to, or None for external imports."""
    candidates = []
    if imp.attr:
        candidates.append(f"{imp.module}.{imp.attr}" if imp.module else imp.attr)
    if imp.module:
        candidates.append(imp.module)
        parts = imp.module.split(".")
        for cut in range(len(parts) - 1, 0, -1):
            candidates.append(".".join(parts[:cut]))
    for cand in candidates:
        if cand in tables.module_files:
            return cand
    return None


def _resolve_class_ref(
    tables: _NameTables, path: str, text: str
) -> tuple[str, str] | None:
    """Resolve a textual class reference to (file path, class qualname)."""
    if "." not in text:
        qual = tables.file_classes.get(path, {}).get(text)
        if qual is not None:
            return (path, qual)
        imp = tables.imports.get(path, {}).get(text)
        if imp is not None and imp.attr is not None:
            module = _internal_module_for(tables, ImportFact(module=imp.module, alias=imp.alias))
            if module is not None:
                target_path = tables.module_files[module]
                qual = tables.file_classes.get(target_path, {}).get(imp.attr)
                if qual is not None:
                    return (target_path, qual)
        return None
    head, _, rest = text.partition(".")
    imp = tables.imports.get(path, {}).get(head)
    if imp is None or "." in rest:
        return None
    module = _internal_module_for(tables, imp)
    if module is None:
        return None
    target_path = tables.module_files[module]
    qual = tables.file_classes.get(target_path, {}).get(rest)
    if qual is not None:
        return (target_path, qual)
    return None


def _resolve_method(
    tables: _NameTables, path: str, class_qual: str, method_name: str, seen: set | None = None
) -> str | None:
    """Look a method up in a class, then its internal base classes, transitively."""
    seen = seen or set()
    key = (path, class_qual)
    if key in seen:
        return None
    seen.add(key)
    qual = tables.class_methods.get(key, {}).get(method_name)
    if qual is not None:
        return f"{path}::{qual}"
    for base in tables.class_bases.get(key, []):
        resolved = _resolve_class_ref(tables, path, base)
        if resolved is not None:
            found = _resolve_method(tables, resolved[0], resolved[1], method_name, seen)
            if found is not None:
                return found
    return None


def _resolve_call(tables: _NameTables, path: str, call: CallFact) -> str | None:
    """Resolution target as a "path::qualname" function key, or None."""
    text = call.callee
    if "." in text:
        head, _, rest = text.partition(".")
        if call.owner_class is not None and head == "self" and "." not in rest:
            return _resolve_method(tables, path, call.owner_class, rest)
        return None
    # Enclosing function scopes, innermost first.
    scope = call.scope
    while scope is not None:
        qual = tables.nested.get((path, scope), {}).get(text)
        if qual is not None:
            return f"{path}::{qual}"
        scope = scope.rpartition(".")[0] or None
    qual = tables.file_functions.get(path, {}).get(text)
    if qual is not None:
        return f"{path}::{qual}"
    imp = tables.imports.get(path, {}).get(text)
    if imp is not None and imp.attr is not None:
        module = _internal_module_for(tables, ImportFact(module=imp.module, alias=imp.alias))
        if module is not None:
            target_path = tables.module_files[module]
            qual = tables.file_functions.get(target_path, {}).get(imp.attr)
            if qual is not None:
                return f"{target_path}::{qual}"
    return None


def call_site_key(path: str, call: CallFact) -> str:
    scope_qual = f"{path}::{call.scope}" if call.scope else path
    return f"{scope_qual}::{call.callee}#{call.ordinal}"


def build_snapshot(tree: FileTree, tag: ReleaseTag, repo_id: str = "") -> Snapshot:
    """Extract and resolve every subject file in `tree` into one Snapshot."""
    entities: list[Entity] = []
    relations: list[Relation] = []
    method_facts_out: list[MethodFacts] = []
    parse_failures: list[tuple[str, str]] = []
    next_id = 0

    def add_entity(kind: EntityKind, name: str, qualified_name: str, path: str = "",
                   span: tuple[int, int] | None = None) -> int:
        nonlocal next_id
        entities.append(
            Entity(id=next_id, kind=kind, name=name, qualified_name=qualified_name,
                   path=path, span=span)
        )
        next_id += 1
        return next_id - 1

    # Directory and file entities mirroring the tree.
    dir_ids: dict[str, int] = {"": add_entity(EntityKind.DIRECTORY, ".", "")}
    dir_paths = sorted(
        {e.path for e in tree.entries if e.kind == "directory"}
        | {p for e in tree.entries for p in _ancestors(e.path)}
    )
    for path in dir_paths:
        if path not in dir_ids:
            dir_ids[path] = add_entity(
                EntityKind.DIRECTORY, path.rsplit("/", 1)[-1], path, path=path
            )
    file_ids: dict[str, int] = {}
    subject_paths: list[str] = []
    for entry in sorted(tree.entries, key=lambda e: e.path):
        if entry.kind != "file":
            continue
        kind = EntityKind.FILE if entry.path.endswith(SUBJECT_SUFFIX) else EntityKind.UNKNOWN
        file_ids[entry.path] = add_entity(
            kind, entry.path.rsplit("/", 1)[-1], entry.path, path=entry.path
        )
        if kind == EntityKind.FILE:
            subject_paths.append(entry.path)
    for path, entity_id in dir_ids.items():
        if path == "":
            continue
        parent = path.rsplit("/", 1)[0] if "/" in path else ""
        relations.append(Relation(src=dir_ids[parent], dst=entity_id, kind=RelationKind.CONTAINS))
    for path, entity_id in file_ids.items():
        parent = path.rsplit("/", 1)[0] if "/" in path else ""
        relations.append(Relation(src=dir_ids[parent], dst=entity_id, kind=RelationKind.CONTAINS))

    # Per-file extraction.
    contents = {e.path: e for e in tree.entries if e.kind == "file"}
    all_facts: dict[str, FileFacts] = {}
    for path in subject_paths:
        facts = extract_file_facts(path, contents[path].read_text())
        all_facts[path] = facts
        if facts.error is not None:
            parse_failures.append((path, facts.error))
        for note in facts.notes:
            logger.warning("%s: %s", path, note)

    tables = _build_tables(all_facts)

    # Definition entities.
    func_ids: dict[str, int] = {}  # "path::qualname" -> id
    class_ids: dict[tuple[str, str], int] = {}  # (path, qualname) -> id
    for path, facts in sorted(all_facts.items()):
        for c in facts.classes:
            class_ids[(path, c.qualname)] = add_entity(
                EntityKind.CLASS_DEF, c.name, f"{path}::{c.qualname}", path=path, span=c.span
            )
        for f in facts.functions:
            func_ids[f"{path}::{f.qualname}"] = add_entity(
                EntityKind.FUNCTION_DEF, f.name, f"{path}::{f.qualname}", path=path, span=f.span
            )
    for path, facts in sorted(all_facts.items()):
        file_id = file_ids[path]
        for c in facts.classes:
            relations.append(
                Relation(src=file_id, dst=class_ids[(path, c.qualname)], kind=RelationKind.DEFINES)
            )
        for f in facts.functions:
            fid = func_ids[f"{path}::{f.qualname}"]
            if f.owner_class is not None and (path, f.owner_class) in class_ids:
                src = class_ids[(path, f.owner_class)]
            else:
                src = file_id
            relations.append(Relation(src=src, dst=fid, kind=RelationKind.DEFINES))

    # Call sites and resolution.
    for path, facts in sorted(all_facts.items()):
        for call in facts.calls:
            site_id = add_entity(
                EntityKind.CALL_SITE,
                call.callee,
                call_site_key(path, call),
                path=path,
                span=(call.line, call.line),
            )
            caller = func_ids.get(f"{path}::{call.scope}") if call.scope else None
            src = caller if caller is not None else file_ids[path]
            relations.append(Relation(src=src, dst=site_id, kind=RelationKind.CALLS))
            target = _resolve_call(tables, path, call)
            if target is not None and target in func_ids:
                relations.append(
                    Relation(src=site_id, dst=func_ids[target], kind=RelationKind.RESOLVES_TO)
                )

    # Internal module entities and import edges.
    module_ids: dict[str, int] = {}
    import_edges: set[tuple[int, int]] = set()
    for path, facts in sorted(all_facts.items()):
        for imp in facts.imports:
            module = _internal_module_for(tables, imp)
            if module is None:
                continue
            if module not in module_ids:
                module_ids[module] = add_entity(
                    EntityKind.MODULE, module.rsplit(".", 1)[-1], module
                )
            edge = (file_ids[path], module_ids[module])
            if edge not in import_edges:
                import_edges.add(edge)
                relations.append(Relation(src=edge[0], dst=edge[1], kind=RelationKind.IMPORTS))

    # Inheritance: internal class, else module traced through an import, else dropped.
    inherit_edges: set[tuple[int, int]] = set()
    for path, facts in sorted(all_facts.items()):
        for c in facts.classes:
            src = class_ids[(path, c.qualname)]
            for base in c.bases:
                resolved = _resolve_class_ref(tables, path, base)
                if resolved is not None:
                    dst = class_ids[resolved]
                else:
                    dst = _module_for_base(tables, path, base, module_ids)
                if dst is None or dst == src or (src, dst) in inherit_edges:
                    continue
                inherit_edges.add((src, dst))
                relations.append(Relation(src=src, dst=dst, kind=RelationKind.INHERITS))

    # Aggregation: receiver-attribute or class-level instantiation of an internal class.
    agg_edges: set[tuple[int, int]] = set()
    for path, facts in sorted(all_facts.items()):
        candidates = list(facts.aggregations) + [
            AggregationCandidate(owner_class=c.qualname, target=t)
            for c in facts.classes
            for t in c.class_level_instantiations
        ]
        for cand in candidates:
            resolved = _resolve_class_ref(tables, path, cand.target)
            if resolved is None:
                continue
            src = class_ids[(path, cand.owner_class)]
            dst = class_ids[resolved]
            if src == dst or (src, dst) in agg_edges:
                continue
            agg_edges.add((src, dst))
            relations.append(Relation(src=src, dst=dst, kind=RelationKind.AGGREGATES))

    for path, facts in sorted(all_facts.items()):
        for raw in facts.method_facts:
            fid = func_ids.get(f"{path}::{raw.method_qualname}")
            if fid is None:
                continue
            method_facts_out.append(
                MethodFacts(
                    method=fid,
                    accessed_attributes=frozenset(raw.accessed_attributes),
                    called_sibling_methods=frozenset(raw.called_sibling_methods),
                )
            )

    return Snapshot(
        repo_id=repo_id,
        tag=tag,
        entities=tuple(entities),
        relations=tuple(relations),
        method_facts=tuple(method_facts_out),
        parse_failures=tuple(parse_failures),
    )


def _module_for_base(
    tables: _NameTables, path: str, base: str, module_ids: dict[str, int]
) -> int | None:
    head = base.split(".")[0]
    imp = tables.imports.get(path, {}).get(head)
    if imp is None:
        return None
    module = _internal_module_for(tables, imp)
    if module is None or module not in module_ids:
        return None
    return module_ids[module]


def _ancestors(path: str) -> list[str]:
    parts = path.split("/")[:-1]
    return ["/".join(parts[: i + 1]) for i in range(len(parts))]
