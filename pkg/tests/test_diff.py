import pytest

from archdelta.diff import component_diff, match_key
from archdelta.extract import build_snapshot
from archdelta.metrics import Variant, similarity_report
from archdelta.model import EntityKind
from archdelta.views import UnknownScopeError, ViewKind

from conftest import make_tree


def snap(files: dict[str, str], tag: str):
    tree = make_tree(files, tag)
    return build_snapshot(tree, tree.tag, repo_id="fixture")


BASE_FILES = {
    "a.py": "def f():\n    log(1)\n    log(2)\n",
    "pkg/b.py": "class C:\n    def m(self):\n        pass\n",
}


class TestMatchKey:
    def test_file_key_is_path(self):
        s = snap(BASE_FILES, "t")
        entity = next(e for e in s.entities if e.path == "pkg/b.py" and e.kind == EntityKind.FILE)
        assert match_key(entity) == "pkg/b.py"

    def test_method_key(self):
        s = snap(BASE_FILES, "t")
        entity = next(e for e in s.entities if e.kind == EntityKind.FUNCTION_DEF and e.name == "m")
        assert match_key(entity) == "pkg/b.py::C.m"

    def test_call_site_ordinal_key(self):
        s = snap(BASE_FILES, "t")
        keys = {match_key(e) for e in s.entities_of_kind(EntityKind.CALL_SITE)}
        assert "a.py::f::log#2" in keys


class TestComponentDiff:
    def test_identical_snapshots_empty(self):
        s1 = snap(BASE_FILES, "v1")
        s2 = snap(BASE_FILES, "v2")
        for view in ViewKind:
            d = component_diff(s1, s2, view)
            assert d.added == () and d.removed == ()

    def test_added_file_in_directory_view(self):
        s1 = snap(BASE_FILES, "v1")
        s2 = snap({**BASE_FILES, "pkg/c.py": ""}, "v2")
        d = component_diff(s1, s2, ViewKind.DIRECTORY)
        assert d.added == ((EntityKind.FILE, "pkg/c.py"),)
        assert d.removed == ()

    def test_antisymmetry(self):
        s1 = snap(BASE_FILES, "v1")
        s2 = snap({**BASE_FILES, "pkg/c.py": "def fresh(): pass\n"}, "v2")
        for view in ViewKind:
            forward = component_diff(s1, s2, view)
            backward = component_diff(s2, s1, view)
            assert forward.added == backward.removed
            assert forward.removed == backward.added

    def test_lists_sorted_and_disjoint(self):
        s1 = snap(BASE_FILES, "v1")
        s2 = snap({"a.py": "def g(): pass\n", "newdir/d.py": ""}, "v2")
        d = component_diff(s1, s2, ViewKind.INTEGRATED)
        assert list(d.added) == sorted(d.added, key=lambda t: (t[0].value, t[1]))
        assert not (set(d.added) & set(d.removed))

    def test_external_stubs_excluded(self):
        files = {
            "top/caller.py": "from lib.funcs import helper\n\ndef run(): helper()\n",
            "lib/funcs.py": "def helper(): pass\n",
        }
        s1 = snap({"top/caller.py": "def run(): pass\n"}, "v1")
        s2 = snap(files, "v2")
        d = component_diff(s1, s2, ViewKind.CALL, "top")
        # The out-of-scope resolution target must not show up as added.
        assert all(not key.startswith("lib/") for _, key in d.added)

    def test_scope_missing_in_one_side(self):
        s1 = snap({"a.py": ""}, "v1")
        s2 = snap({"a.py": "", "new/b.py": ""}, "v2")
        d = component_diff(s1, s2, ViewKind.DIRECTORY, "new")
        assert (EntityKind.FILE, "new/b.py") in d.added
        assert d.removed == ()

    def test_scope_missing_in_both_errors(self):
        s1 = snap({"a.py": ""}, "v1")
        s2 = snap({"a.py": ""}, "v2")
        with pytest.raises(UnknownScopeError):
            component_diff(s1, s2, ViewKind.DIRECTORY, "ghost")


VARIANT_VIEW_KINDS = {
    Variant.ARCHITECTURAL: (ViewKind.DIRECTORY, {EntityKind.DIRECTORY}),
    Variant.FUNCTIONAL: (ViewKind.CALL, {EntityKind.FUNCTION_DEF}),
    Variant.CLASS: (ViewKind.COLLABORATION, {EntityKind.CLASS_DEF}),
    Variant.MODULE: (ViewKind.COLLABORATION, {EntityKind.MODULE}),
}


class TestConsistencyWithMetrics:
    def test_added_removed_counts_match_similarity(self):
        s1 = snap(BASE_FILES, "v1")
        s2 = snap(
            {
                "a.py": "def f():\n    log(1)\n",
                "pkg/b.py": "import a\n\nclass D:\n    pass\n",
                "newdir/fresh.py": "def added(): pass\n",
            },
            "v2",
        )
        report = similarity_report(s1, s2, "")
        for variant, (view, kinds) in VARIANT_VIEW_KINDS.items():
            d = component_diff(s1, s2, view)
            added = sum(1 for k, _ in d.added if k in kinds)
            removed = sum(1 for k, _ in d.removed if k in kinds)
            b = report.breakdown(variant)
            assert added + removed == b.add_components + b.rem_components, variant


class TestTriangleComposition:
    def test_three_tag_composition(self):
        s1 = snap({"a.py": ""}, "t1")
        s2 = snap({"a.py": "", "b.py": ""}, "t2")
        s3 = snap({"a.py": "", "b.py": "", "c.py": ""}, "t3")
        for view in ViewKind:
            d13 = set(component_diff(s1, s3, view).added)
            d12 = set(component_diff(s1, s2, view).added)
            d23 = set(component_diff(s2, s3, view).added)
            assert d13 <= d12 | d23
