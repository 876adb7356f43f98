"""Read-only HTTP facade over the snapshot cache.

Every data endpoint is a pure function of the cache files, so identical
requests return identical bytes until the cache changes. The only
mutation is POST /repos, which runs the analysis pipeline in the
background (one analyzer per repository at a time).
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import diff, metrics, pipeline, store
from .repo import repo_id_for
from .store import CacheLayout, SCHEMA_VERSION
from .views import UnknownScopeError, ViewKind, build_view


class RepoRequest(BaseModel):
    locator: str


def create_app(cache_root: Path, cors_origins: list[str] | None = None) -> FastAPI:
    app = FastAPI(title="archdelta", version=store.TOOL_VERSION)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=cors_origins or ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    cache = CacheLayout(root=Path(cache_root))
    status: dict[str, str] = {}  # repo_id -> building|ready|failed
    status_lock = threading.Lock()

    def load_or_404(repo_id: str, tag: str):
        _check_ready(repo_id)
        try:
            return store.load_snapshot(cache, repo_id, tag)
        except store.SnapshotNotCachedError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    def _check_ready(repo_id: str) -> None:
        with status_lock:
            state = status.get(repo_id)
        if state == "building":
            raise HTTPException(status_code=503, detail="analysis in progress")
        if repo_id not in cache.repo_ids():
            raise HTTPException(status_code=404, detail=f"unknown repo: {repo_id}")

    @app.get("/health")
    def health():
        return Response(content="ok", media_type="text/plain")

    @app.get("/repos")
    def list_repos():
        out = []
        for repo_id in cache.repo_ids():
            manifest = store.load_manifest(cache, repo_id)
            with status_lock:
                state = status.get(repo_id, "ready")
            out.append(
                {
                    "repo_id": repo_id,
                    "locator": manifest["locator"],
                    "tags": [t["name"] for t in manifest["tags"]],
                    "status": state,
                }
            )
        return {"schema_version": SCHEMA_VERSION, "repos": out}

    @app.post("/repos", status_code=202)
    def add_repo(body: RepoRequest):
        repo_id = repo_id_for(body.locator)
        with status_lock:
            if status.get(repo_id) == "building":
                raise HTTPException(status_code=409, detail="already analyzing")
            status[repo_id] = "building"

        def run() -> None:
            try:
                pipeline.analyze_repository(body.locator, cache.root)
                state = "ready"
            except Exception:
                state = "failed"
            with status_lock:
                status[repo_id] = state

        threading.Thread(target=run, daemon=True).start()
        return {"repo_id": repo_id, "status": "building"}

    @app.get("/repos/{repo_id}")
    def repo_status(repo_id: str):
        with status_lock:
            state = status.get(repo_id)
        if state is None:
            if repo_id not in cache.repo_ids():
                raise HTTPException(status_code=404, detail=f"unknown repo: {repo_id}")
            state = "ready"
        return {"repo_id": repo_id, "status": state}

    @app.get("/repos/{repo_id}/tags")
    def list_tags(repo_id: str):
        _check_ready(repo_id)
        manifest = store.load_manifest(cache, repo_id)
        return {"schema_version": SCHEMA_VERSION, "tags": manifest["tags"]}

    @app.get("/repos/{repo_id}/tags/{tag}/tree")
    def tree(repo_id: str, tag: str):
        snapshot = load_or_404(repo_id, tag)
        from .model import EntityKind

        dirs: dict[str, dict] = {}
        for e in sorted(snapshot.entities, key=lambda e: e.path):
            if e.kind == EntityKind.DIRECTORY:
                dirs[e.path] = {"path": e.path, "directories": [], "files": []}
        for e in sorted(snapshot.entities, key=lambda e: e.path):
            parent = e.path.rsplit("/", 1)[0] if "/" in e.path else ""
            if e.kind == EntityKind.DIRECTORY and e.path:
                dirs[parent]["directories"].append(dirs[e.path])
            elif e.kind in (EntityKind.FILE, EntityKind.UNKNOWN):
                dirs[parent]["files"].append(
                    {"path": e.path, "kind": e.kind.value}
                )
        return {"schema_version": SCHEMA_VERSION, "tree": dirs.get("", {})}

    @app.get("/repos/{repo_id}/tags/{tag}/view")
    def view(repo_id: str, tag: str, kind: str, path: str = ""):
        snapshot = load_or_404(repo_id, tag)
        try:
            view_kind = ViewKind(kind)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"bad kind: {kind}") from exc
        try:
            graph = build_view(snapshot, view_kind, path)
        except UnknownScopeError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return Response(
            content=store.export_view(graph, "json"),
            media_type="application/json",
        )

    @app.get("/repos/{repo_id}/diff")
    def diff_endpoint(repo_id: str, base: str, head: str, kind: str, path: str = ""):
        s_base = load_or_404(repo_id, base)
        s_head = load_or_404(repo_id, head)
        try:
            view_kind = ViewKind(kind)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"bad kind: {kind}") from exc
        try:
            component_diff = diff.component_diff(s_base, s_head, view_kind, path)
            similarity = metrics.similarity_report(s_base, s_head, path)
        except UnknownScopeError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return {
            "schema_version": SCHEMA_VERSION,
            "diff": component_diff.as_dict(),
            "similarity": similarity.as_dict(),
        }

    @app.get("/repos/{repo_id}/tags/{tag}/cohesion")
    def cohesion(repo_id: str, tag: str):
        _check_ready(repo_id)
        try:
            return store.load_cohesion(cache, repo_id, tag)
        except store.SnapshotNotCachedError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    return app
