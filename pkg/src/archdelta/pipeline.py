"""End-to-end analysis: clone, walk tags, extract, and cache.

Shared by the CLI and the HTTP service so both stay a thin shell over
the same pipeline.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import extract, metrics, repo, store

logger = logging.getLogger(__name__)


@dataclass
class TagResult:
    tag: str
    files: int
    functions: int
    classes: int
    parse_failures: int
    cached: bool  # True when reused from a warm cache


def analyze_repository(
    locator: str,
    cache_root: Path,
    tag_names: list[str] | None = None,
    jobs: int | None = None,
) -> list[TagResult]:
    """Snapshot and cohesion files for every requested tag, skipping tags
    whose snapshot is already cached for the same commit."""
    handle = repo.open_repo(locator, cache_root)
    cache = store.CacheLayout(root=Path(cache_root))
    tags = repo.list_release_tags(handle)
    if tag_names is not None:
        by_name = {t.name: t for t in tags}
        missing = [n for n in tag_names if n not in by_name]
        if missing:
            raise repo.UnknownTagError(f"unknown tag: {', '.join(missing)}")
        tags = [by_name[n] for n in tag_names]
    store.save_manifest(cache, handle.repo_id, locator, tags)

    def process(tag: repo.ReleaseTag) -> TagResult:
        try:
            cached = store.load_snapshot(cache, handle.repo_id, tag.name)
            if cached.tag.commit_id == tag.commit_id:
                logger.info("tag %s: cache hit, skipping extraction", tag.name)
                return _result(cached, cached_hit=True)
        except store.StoreError:
            pass
        logger.info("tag %s: extracting", tag.name)
        tree = repo.materialize_tree(handle, tag)
        snapshot = extract.build_snapshot(tree, tag, repo_id=handle.repo_id)
        store.save_snapshot(snapshot, cache)
        store.save_cohesion(metrics.cohesion_report(snapshot), cache, handle.repo_id)
        return _result(snapshot, cached_hit=False)

    workers = jobs or min(len(tags) or 1, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(process, tags))


def _result(snapshot, cached_hit: bool) -> TagResult:
    from .model import EntityKind

    return TagResult(
        tag=snapshot.tag.name,
        files=len(snapshot.entities_of_kind(EntityKind.FILE)),
        functions=len(snapshot.entities_of_kind(EntityKind.FUNCTION_DEF)),
        classes=len(snapshot.entities_of_kind(EntityKind.CLASS_DEF)),
        parse_failures=len(snapshot.parse_failures),
        cached=cached_hit,
    )
