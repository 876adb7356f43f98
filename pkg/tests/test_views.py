import pytest

from archdelta.extract import build_snapshot
from archdelta.model import EntityKind, RelationKind
from archdelta.views import (
    UnknownScopeError,
    ViewKind,
    build_view,
    call_view,
    collaboration_view,
    directory_view,
    integrated_view,
)

from conftest import make_tree

ALL_VIEWS = list(ViewKind)


@pytest.fixture()
def two_dir_snapshot():
    """Call from one directory resolving into another."""
    tree = make_tree({
        "top/caller.py": "from lib.funcs import helper\n\ndef run(): helper()\n",
        "lib/funcs.py": "def helper(): pass\n",
    })
    return build_snapshot(tree, tree.tag)


class TestDirectoryView:
    def test_corpus_root_counts(self, corpus_snapshot):
        g = directory_view(corpus_snapshot, "")
        dirs = [n for n in g.nodes if n.kind == EntityKind.DIRECTORY]
        files = [n for n in g.nodes if n.kind in (EntityKind.FILE, EntityKind.UNKNOWN)]
        assert len(dirs) == 3
        assert len(files) == 6
        assert len(g.edges) == 8
        assert all(e.kind == RelationKind.CONTAINS for e in g.edges)

    def test_forest_property(self, corpus_snapshot):
        for scope in ("", "pkg", "util"):
            g = directory_view(corpus_snapshot, scope)
            assert len(g.edges) == len(g.nodes) - 1  # single root at the scope

    def test_leaf_scope(self, corpus_snapshot):
        g = directory_view(corpus_snapshot, "util")
        assert {n.label for n in g.nodes} == {"util", "textops.py"}
        assert len(g.edges) == 1

    def test_unknown_scope(self, corpus_snapshot):
        with pytest.raises(UnknownScopeError):
            directory_view(corpus_snapshot, "ghost")


class TestCallView:
    def test_simple_pair(self):
        tree = make_tree({"d/m.py": "def a(): b()\n\ndef b(): pass\n"})
        s = build_snapshot(tree, tree.tag)
        g = call_view(s, "d")
        labels = {(n.kind, n.label) for n in g.nodes}
        assert labels == {
            (EntityKind.FILE, "m.py"),
            (EntityKind.FUNCTION_DEF, "a"),
            (EntityKind.FUNCTION_DEF, "b"),
            (EntityKind.CALL_SITE, "b"),
        }
        from collections import Counter

        kinds = Counter(e.kind for e in g.edges)
        assert kinds == Counter({
            RelationKind.DEFINES: 2,
            RelationKind.CALLS: 1,
            RelationKind.RESOLVES_TO: 1,
        })

    def test_scope_without_subject_files(self, corpus_snapshot):
        tree = make_tree({"docs/readme.md": "x", "code/a.py": "A = 1\n"})
        s = build_snapshot(tree, tree.tag)
        g = call_view(s, "docs")
        assert g.nodes == ()

    def test_cross_scope_resolution_creates_external_stub(self, two_dir_snapshot):
        g = call_view(two_dir_snapshot, "top")
        stubs = [n for n in g.nodes if n.is_external]
        assert [n.qualified_name for n in stubs] == ["lib/funcs.py::helper"]
        assert any(e.kind == RelationKind.RESOLVES_TO for e in g.edges)

    def test_methods_attach_to_their_file(self, corpus_snapshot):
        g = call_view(corpus_snapshot, "pkg")
        file_ids = {n.id for n in g.nodes if n.kind == EntityKind.FILE}
        method_ids = {n.id for n in g.nodes if n.kind == EntityKind.FUNCTION_DEF}
        defines = [e for e in g.edges if e.kind == RelationKind.DEFINES]
        assert method_ids == {e.dst for e in defines}
        assert all(e.src in file_ids for e in defines)


class TestCollaborationView:
    def test_inheritance_edge_in_scope(self, corpus_snapshot):
        g = collaboration_view(corpus_snapshot, "pkg")
        inherit = [e for e in g.edges if e.kind == RelationKind.INHERITS]
        assert len(inherit) == 1

    def test_internal_import_shows_module_node(self, corpus_snapshot):
        g = collaboration_view(corpus_snapshot, "util")
        modules = [n for n in g.nodes if n.kind == EntityKind.MODULE]
        assert [n.qualified_name for n in modules] == ["helpers"]
        assert any(e.kind == RelationKind.IMPORTS for e in g.edges)

    def test_directory_without_classes_or_imports(self):
        tree = make_tree({"plain/just.py": "X = 1\n"})
        s = build_snapshot(tree, tree.tag)
        g = collaboration_view(s, "plain")
        assert {n.kind for n in g.nodes} == {EntityKind.FILE}
        assert g.edges == ()

    def test_out_of_scope_inheritance_target_is_stub(self):
        tree = make_tree({
            "a/base.py": "class Base: pass\n",
            "b/child.py": "from a.base import Base\n\nclass Child(Base): pass\n",
        })
        s = build_snapshot(tree, tree.tag)
        g = collaboration_view(s, "b")
        stubs = [n for n in g.nodes if n.is_external]
        assert [n.label for n in stubs] == ["Base"]


class TestIntegratedView:
    def test_union_identity(self, corpus_snapshot):
        for scope in ("", "pkg", "util"):
            call = call_view(corpus_snapshot, scope)
            collab = collaboration_view(corpus_snapshot, scope)
            integrated = integrated_view(corpus_snapshot, scope)
            expected_nodes = {n.id for n in call.nodes} | {n.id for n in collab.nodes}
            assert {n.id for n in integrated.nodes} == expected_nodes
            expected_edges = {(e.src, e.dst, e.kind) for e in call.edges} | {
                (e.src, e.dst, e.kind) for e in collab.edges
            }
            assert {(e.src, e.dst, e.kind) for e in integrated.edges} == expected_edges

    def test_legend_lists_all_five_kinds(self, corpus_snapshot):
        g = integrated_view(corpus_snapshot, "")
        assert [k.value for k in g.legend] == [
            "file", "function_def", "call_site", "class_def", "module",
        ]

    def test_empty_scope(self):
        tree = make_tree({"docs/readme.md": "x", "a.py": "A = 1\n"})
        s = build_snapshot(tree, tree.tag)
        g = integrated_view(s, "docs")
        assert g.nodes == () and g.edges == ()


class TestViewProperties:
    @pytest.mark.parametrize("view", ALL_VIEWS)
    @pytest.mark.parametrize("scope", ["", "pkg", "util"])
    def test_edge_endpoints_are_nodes(self, corpus_snapshot, view, scope):
        g = build_view(corpus_snapshot, view, scope)
        ids = {n.id for n in g.nodes}
        for e in g.edges:
            assert e.src in ids and e.dst in ids

    @pytest.mark.parametrize("view", ALL_VIEWS)
    def test_scope_monotonicity(self, corpus_snapshot, view):
        parent = {n.id for n in build_view(corpus_snapshot, view, "").nodes}
        for scope in ("pkg", "util"):
            child = build_view(corpus_snapshot, view, scope)
            internal = {n.id for n in child.nodes if not n.is_external}
            assert internal <= parent

    @pytest.mark.parametrize("view", ALL_VIEWS)
    def test_legend_covers_node_kinds(self, corpus_snapshot, view):
        g = build_view(corpus_snapshot, view, "")
        assert {n.kind for n in g.nodes} <= set(g.legend)
