"""Git repository ingestion: open a repo, list release tags, read file trees.

Works against a bare clone kept under the cache directory, so reading a
tag never touches the source repository's working copy. All reads go
through ``git`` plumbing commands; tags are the only version axis.
"""

from __future__ import annotations

import hashlib
import os
import re
import subprocess
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .model import ReleaseTag

DEFAULT_CACHE = ".archdelta"
CACHE_ENV = "ARCHDELTA_CACHE"


class RepoError(Exception):
    pass


class UnknownTagError(RepoError):
    pass


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def repo_id_for(locator: str) -> str:
    """Deterministic slug for a locator; short hash guards against collisions."""
    stem = re.sub(r"[^A-Za-z0-9._-]+", "-", locator.rstrip("/")).strip("-")
    slug = stem[-48:].strip("-") or "repo"
    digest = hashlib.sha1(locator.encode("utf-8")).hexdigest()[:8]
    return f"{slug}-{digest}"


@dataclass(frozen=True)
class RepoHandle:
    locator: str
    workdir: Path
    repo_id: str

    @property
    def git_dir(self) -> Path:
        return self.workdir / "git"


@dataclass(frozen=True)
class FileTreeEntry:
    path: str
    kind: str  # "directory" | "file"
    _repo: RepoHandle | None = None
    _commit: str = ""

    def read_bytes(self) -> bytes:
        if self.kind != "file" or self._repo is None:
            raise RepoError(f"not a readable file entry: {self.path}")
        return _git_bytes(self._repo.git_dir, "show", f"{self._commit}:{self.path}")

    def read_text(self) -> str:
        return self.read_bytes().decode("utf-8", errors="replace")


@dataclass(frozen=True)
class FileTree:
    tag: ReleaseTag
    entries: tuple[FileTreeEntry, ...]

    def paths(self) -> set[str]:
        return {e.path for e in self.entries}


_open_locks: dict[str, threading.Lock] = {}
_open_locks_guard = threading.Lock()


def _lock_for(repo_id: str) -> threading.Lock:
    with _open_locks_guard:
        return _open_locks.setdefault(repo_id, threading.Lock())


def _git(git_dir: Path, *args: str) -> str:
    return _git_bytes(git_dir, *args).decode("utf-8", errors="replace")


def _git_bytes(git_dir: Path, *args: str) -> bytes:
    proc = subprocess.run(
        ["git", "--git-dir", str(git_dir), *args],
        capture_output=True,
    )
    if proc.returncode != 0:
        raise RepoError(proc.stderr.decode("utf-8", errors="replace").strip())
    return proc.stdout


def open_repo(locator: str, cache_dir: str | os.PathLike | None = None) -> RepoHandle:
    """Clone (or refresh) `locator` into the cache and return a handle.

    One clone runs at a time per repo_id; a warm cache is only fetched.
    """
    if "://" not in locator and "@" not in locator.split("/")[0]:
        p = Path(locator)
        if not p.exists():
            raise RepoError(f"not a git repository: {locator}")
        probe = subprocess.run(
            ["git", "-C", str(p), "rev-parse", "--git-dir"], capture_output=True
        )
        if probe.returncode != 0:
            raise RepoError(f"not a git repository: {locator}")

    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    rid = repo_id_for(locator)
    workdir = cache / rid
    handle = RepoHandle(locator=locator, workdir=workdir, repo_id=rid)

    with _lock_for(rid):
        if handle.git_dir.exists():
            # A failed refresh on a warm cache is tolerable; existing tags stay usable.
            subprocess.run(
                ["git", "--git-dir", str(handle.git_dir), "fetch", "--tags", "--force"],
                capture_output=True,
            )
            return handle
        workdir.mkdir(parents=True, exist_ok=True)
        proc = subprocess.run(
            ["git", "clone", "--bare", locator, str(handle.git_dir)],
            capture_output=True,
        )
        if proc.returncode != 0:
            raise RepoError(proc.stderr.decode("utf-8", errors="replace").strip())
    return handle


def list_release_tags(repo: RepoHandle) -> list[ReleaseTag]:
    """Tags sorted ascending by tagged-commit timestamp, then tag name."""
    out = _git(
        repo.git_dir,
        "for-each-ref",
        "refs/tags",
        "--format=%(refname:short)\t%(objectname)\t%(*objectname)",
    )
    tags: list[ReleaseTag] = []
    for line in out.splitlines():
        if not line.strip():
            continue
        name, obj, peeled = line.split("\t")
        commit = peeled or obj
        ts = int(_git(repo.git_dir, "show", "-s", "--format=%ct", commit).split()[0])
        tags.append(
            ReleaseTag(
                name=name,
                commit_id=commit,
                timestamp=datetime.fromtimestamp(ts, tz=timezone.utc),
            )
        )
    tags.sort(key=lambda t: (t.timestamp, t.name))
    return tags


def resolve_tag(repo: RepoHandle, tag_name: str) -> ReleaseTag:
    for tag in list_release_tags(repo):
        if tag.name == tag_name:
            return tag
    raise UnknownTagError(f"unknown tag: {tag_name}")


def materialize_tree(repo: RepoHandle, tag: ReleaseTag) -> FileTree:
    """Read-only file tree of the committed content at `tag`."""
    known = {t.name for t in list_release_tags(repo)}
    if tag.name not in known:
        raise UnknownTagError(f"unknown tag: {tag.name}")
    out = _git_bytes(repo.git_dir, "ls-tree", "-r", "-t", "-z", tag.commit_id)
    entries: list[FileTreeEntry] = []
    for record in out.split(b"\0"):
        if not record:
            continue
        meta, path = record.split(b"\t", 1)
        _mode, objtype, _oid = meta.decode().split()
        rel = path.decode("utf-8", errors="replace")
        if objtype == "tree":
            entries.append(FileTreeEntry(path=rel, kind="directory"))
        elif objtype == "blob":
            entries.append(
                FileTreeEntry(path=rel, kind="file", _repo=repo, _commit=tag.commit_id)
            )
    entries.sort(key=lambda e: e.path)
    return FileTree(tag=tag, entries=tuple(entries))
