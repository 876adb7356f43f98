import subprocess
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import pytest

from archdelta.model import ReleaseTag
from archdelta.repo import FileTree, FileTreeEntry

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_SMALL = FIXTURES / "corpus_small"


@dataclass(frozen=True)
class MemoryEntry(FileTreeEntry):
    """Tree entry backed by in-memory content instead of a git object."""

    content: bytes = b""

    def read_bytes(self) -> bytes:
        return self.content


def make_tree(files: dict[str, str], tag_name: str = "test") -> FileTree:
    """Build a FileTree from {path: content}; directories are implied."""
    dirs: set[str] = set()
    for path in files:
        parts = path.split("/")[:-1]
        for i in range(len(parts)):
            dirs.add("/".join(parts[: i + 1]))
    entries = [FileTreeEntry(path=d, kind="directory") for d in sorted(dirs)]
    entries += [
        MemoryEntry(path=p, kind="file", content=c.encode()) for p, c in sorted(files.items())
    ]
    tag = ReleaseTag(
        name=tag_name,
        commit_id="0" * 40,
        timestamp=datetime(2024, 1, 1, tzinfo=timezone.utc),
    )
    return FileTree(tag=tag, entries=tuple(sorted(entries, key=lambda e: e.path)))


def tree_from_directory(root: Path, tag_name: str = "test") -> FileTree:
    files = {
        str(p.relative_to(root)).replace("\\", "/"): p.read_text()
        for p in root.rglob("*")
        if p.is_file()
    }
    return make_tree(files, tag_name)


@pytest.fixture(scope="session")
def corpus_tree() -> FileTree:
    return tree_from_directory(CORPUS_SMALL, "corpus")


@pytest.fixture(scope="session")
def corpus_snapshot(corpus_tree):
    from archdelta.extract import build_snapshot

    return build_snapshot(corpus_tree, corpus_tree.tag, repo_id="corpus-small")


def git(repo_dir: Path, *args: str, env: dict | None = None) -> str:
    proc = subprocess.run(
        ["git", "-C", str(repo_dir), *args],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0, proc.stderr
    return proc.stdout


def make_git_repo(root: Path, taggings: list[tuple[str, dict[str, str | None]]]) -> Path:
    """Scripted git fixture: one commit+tag per entry, deterministic dates.

    Each entry is (tag_name, {path: content}); a content of None deletes
    the file. Commit timestamps increase by one hour per tag.
    """
    import os

    repo_dir = root / "fixture-repo"
    repo_dir.mkdir(parents=True, exist_ok=True)
    git(repo_dir, "init", "-q")
    git(repo_dir, "config", "user.email", "fixture@example.test")
    git(repo_dir, "config", "user.name", "Fixture")
    for i, (tag_name, changes) in enumerate(taggings):
        for path, content in changes.items():
            target = repo_dir / path
            if content is None:
                target.unlink()
                git(repo_dir, "add", "-A", path)
            else:
                target.parent.mkdir(parents=True, exist_ok=True)
                target.write_text(content)
                git(repo_dir, "add", path)
        stamp = f"2024-01-01T{i:02d}:00:00 +0000"
        env = dict(os.environ, GIT_AUTHOR_DATE=stamp, GIT_COMMITTER_DATE=stamp)
        git(repo_dir, "commit", "-q", "-m", f"release {tag_name}", env=env)
        git(repo_dir, "tag", tag_name)
    return repo_dir


@pytest.fixture()
def two_tag_repo(tmp_path: Path) -> Path:
    """v1 -> v2 adds directory newpkg/ with 2 files and 1 function, removes old.py."""
    return make_git_repo(
        tmp_path,
        [
            (
                "v1",
                {
                    "a.py": "def a():\n    pass\n",
                    "old.py": "VALUE = 1\n",
                    "pkg/b.py": "def b():\n    a_thing = 1\n",
                },
            ),
            (
                "v2",
                {
                    "old.py": None,
                    "newpkg/one.py": "def fresh():\n    pass\n",
                    "newpkg/two.py": "CONST = 2\n",
                },
            ),
        ],
    )
