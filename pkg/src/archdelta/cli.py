"""Command-line front door.

Exit codes: 0 ok, 1 environment/repo error, 2 missing cache, 64 usage.
Data goes to stdout, logs to stderr.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import diff as diff_mod
from . import metrics, pipeline, repo, store
from .store import CacheLayout
from .views import UnknownScopeError, ViewKind, build_view

EXIT_OK = 0
EXIT_REPO_ERROR = 1
EXIT_MISSING_CACHE = 2
EXIT_USAGE = 64

VIEW_CHOICES = [v.value for v in ViewKind]

cache_option = click.option(
    "--cache",
    "cache_dir",
    envvar=repo.CACHE_ENV,
    default=repo.DEFAULT_CACHE,
    show_default=True,
    type=click.Path(path_type=Path),
    help="Cache directory for clones and snapshots.",
)


@click.group()
def cli() -> None:
    """Recover and compare the architecture of a Python project across releases."""
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(message)s")


@cli.command("analyze")
@click.argument("locator")
@click.option("--tags", "tags_csv", default=None, help="Comma-separated tag names (default: all).")
@click.option("--jobs", type=int, default=None, help="Parallel tag workers (default: CPU count).")
@cache_option
def cmd_analyze(locator: str, tags_csv: str | None, jobs: int | None, cache_dir: Path) -> None:
    """Extract and cache snapshots plus cohesion reports for every tag."""
    tag_names = [t.strip() for t in tags_csv.split(",")] if tags_csv else None
    try:
        results = pipeline.analyze_repository(locator, cache_dir, tag_names, jobs)
    except (repo.RepoError, store.StoreError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REPO_ERROR)
    click.echo(f"{'tag':<28} {'files':>6} {'functions':>10} {'classes':>8} {'failures':>9}")
    for r in results:
        click.echo(f"{r.tag:<28} {r.files:>6} {r.functions:>10} {r.classes:>8} {r.parse_failures:>9}")
    warm = sum(1 for r in results if r.cached)
    if warm:
        click.echo(f"reused {warm} cached snapshot(s)", err=True)


def _load_snapshot_or_exit(cache: CacheLayout, repo_id: str, tag: str):
    try:
        return store.load_snapshot(cache, repo_id, tag)
    except store.SnapshotNotCachedError as exc:
        click.echo(f"error: {exc}\nhint: run `archdelta analyze` first", err=True)
        sys.exit(EXIT_MISSING_CACHE)
    except store.StoreError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REPO_ERROR)


@cli.command("view")
@click.option("--repo", "repo_id", required=True, help="Repository id (see analyze output path).")
@click.option("--tag", required=True)
@click.option("--kind", type=click.Choice(VIEW_CHOICES), required=True)
@click.option("--path", "scope", default="", help="Directory scope (default: repo root).")
@click.option("--format", "fmt", type=click.Choice(["json", "dot"]), default="json", show_default=True)
@cache_option
def cmd_view(repo_id: str, tag: str, kind: str, scope: str, fmt: str, cache_dir: Path) -> None:
    """Print one view graph of a cached snapshot."""
    cache = CacheLayout(root=cache_dir)
    snapshot = _load_snapshot_or_exit(cache, repo_id, tag)
    try:
        graph = build_view(snapshot, ViewKind(kind), scope)
    except UnknownScopeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REPO_ERROR)
    sys.stdout.buffer.write(store.export_view(graph, fmt))


@cli.command("diff")
@click.option("--repo", "repo_id", required=True)
@click.option("--base", required=True, help="Base tag name.")
@click.option("--head", required=True, help="Head tag name.")
@click.option("--kind", type=click.Choice(VIEW_CHOICES), default="directory", show_default=True)
@click.option("--path", "scope", default="")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
@cache_option
def cmd_diff(repo_id: str, base: str, head: str, kind: str, scope: str, fmt: str, cache_dir: Path) -> None:
    """Added/removed components and all four similarity scores between two tags."""
    cache = CacheLayout(root=cache_dir)
    s_base = _load_snapshot_or_exit(cache, repo_id, base)
    s_head = _load_snapshot_or_exit(cache, repo_id, head)
    try:
        component_diff = diff_mod.component_diff(s_base, s_head, ViewKind(kind), scope)
        similarity = metrics.similarity_report(s_base, s_head, scope)
    except UnknownScopeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REPO_ERROR)
    if fmt == "json":
        payload = {"diff": component_diff.as_dict(), "similarity": similarity.as_dict()}
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
        return
    click.echo(f"diff {base} -> {head}  view={kind}  scope={scope or '(root)'}")
    for label, items in (("added", component_diff.added), ("removed", component_diff.removed)):
        click.echo(f"{label} ({len(items)}):")
        for item_kind, key in items:
            click.echo(f"  {item_kind.value:<14} {key}")
    click.echo("similarity:")
    for name in ("architectural", "functional", "class", "module"):
        b = similarity.as_dict()[name]
        click.echo(
            f"  {name:<14} {b['score']:7.2f}%  addC={b['addC']} remC={b['remC']} "
            f"addE={b['addE']} remE={b['remE']} mto={b['mto']} aco={b['aco_i']}+{b['aco_j']}"
        )


@cli.command("cohesion")
@click.option("--repo", "repo_id", required=True)
@click.option("--tag", required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="table", show_default=True)
@cache_option
def cmd_cohesion(repo_id: str, tag: str, fmt: str, cache_dir: Path) -> None:
    """Print the cached per-class LCOM4 report for one tag."""
    cache = CacheLayout(root=cache_dir)
    try:
        payload = store.load_cohesion(cache, repo_id, tag)
    except store.SnapshotNotCachedError as exc:
        click.echo(f"error: {exc}\nhint: run `archdelta analyze` first", err=True)
        sys.exit(EXIT_MISSING_CACHE)
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True, indent=2))
        return
    click.echo(f"{'class':<60} {'lcom4':>6} {'methods':>8}")
    for entry in payload["entries"]:
        click.echo(f"{entry['class']:<60} {entry['lcom4']:>6} {entry['method_count']:>8}")


@cli.command("serve")
@click.option("--port", type=int, default=8070, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@cache_option
def cmd_serve(port: int, host: str, cache_dir: Path) -> None:
    """Serve the cache read-only over HTTP for the web UI."""
    import uvicorn

    from .api import create_app

    app = create_app(Path(cache_dir))
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except SystemExit:
        raise
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_REPO_ERROR)


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(130)


if __name__ == "__main__":
    main()
