"""HTTP facade over a finished session.

All endpoints read from an immutable ``SessionState`` computed at startup,
so responses are pure functions of the request and concurrent reads need no
locks.  Bad identifiers return 400 with an ``{"error": ...}`` body; internal
failures return an opaque 500.
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from starlette.exceptions import HTTPException as StarletteHTTPException

from . import explore
from .layout import layout_to_json
from .pipeline import SessionState

FALLBACK_PAGE = """<!doctype html>
<html>
<head><meta charset="utf-8"><title>gegraph</title></head>
<body>
<h1>gegraph service</h1>
<p>The explorer UI bundle was not found. The JSON API is available under
<code>/api/</code>: graph, layout, aggregation, expand/{community},
related?node=&amp;strategy=&amp;k=, metrics.</p>
</body>
</html>
"""


def default_static_dir() -> Path:
    return Path(__file__).resolve().parents[2] / "frontend" / "dist"


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse({"error": message}, status_code=400)


def create_app(state: SessionState, static_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="gegraph", docs_url=None, redoc_url=None, openapi_url=None)

    graph = state.graph
    graph_doc = graph.to_json_dict()
    layout_doc = json.loads(layout_to_json(state.layout, graph.names, graph.edges))
    aggregation_doc = state.aggregation.to_json_dict()
    metrics_doc = json.loads(state.report.to_json())
    known_communities = {node.community for node in state.aggregation.nodes}

    @app.exception_handler(StarletteHTTPException)
    async def http_error(request: Request, exc: StarletteHTTPException):
        return JSONResponse({"error": str(exc.detail)}, status_code=exc.status_code)

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return JSONResponse({"error": "internal server error"}, status_code=500)

    @app.get("/api/graph")
    async def api_graph():
        return JSONResponse(graph_doc)

    @app.get("/api/layout")
    async def api_layout():
        return JSONResponse(layout_doc)

    @app.get("/api/aggregation")
    async def api_aggregation():
        return JSONResponse(aggregation_doc)

    @app.get("/api/expand/{community}")
    async def api_expand(community: str):
        try:
            cid = int(community)
        except ValueError:
            return _bad_request(f"community must be an integer, got {community!r}")
        if cid not in known_communities:
            return _bad_request(f"unknown community {cid}")
        geometry = explore.expand_community(
            state.aggregation, state.layout, cid, graph.edges, graph.names
        )
        return JSONResponse(geometry.to_json_dict())

    @app.get("/api/related")
    async def api_related(node: str = "", strategy: str = "", k: str = "5"):
        if not node:
            return _bad_request("missing query parameter 'node'")
        if not strategy:
            return _bad_request("missing query parameter 'strategy'")
        try:
            top = int(k)
        except ValueError:
            return _bad_request(f"k must be an integer, got {k!r}")
        try:
            result = explore.related_nodes(
                node, strategy, top, state.strategy_similarities, graph.names
            )
        except ValueError as exc:
            return _bad_request(str(exc))
        return JSONResponse(result.to_json_dict())

    @app.get("/api/metrics")
    async def api_metrics():
        return JSONResponse(metrics_doc)

    root = static_dir if static_dir is not None else default_static_dir()
    if root.is_dir() and (root / "index.html").is_file():
        app.mount("/", StaticFiles(directory=root, html=True), name="ui")
    else:
        @app.get("/")
        async def fallback_ui():
            return HTMLResponse(FALLBACK_PAGE)

    return app
