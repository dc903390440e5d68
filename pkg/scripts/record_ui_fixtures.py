#!/usr/bin/env python3
"""Record live HTTP responses as JSON fixtures for the frontend test suite.

Builds the default session on the bundled dataset, then captures every
endpoint the UI consumes into frontend/tests/fixtures/. Rerun whenever the
server contracts or the bundled dataset change.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from fastapi.testclient import TestClient

from gegraph.graph_model import load_graph_file
from gegraph.pipeline import PipelineConfig, build_session
from gegraph.server import create_app

QUERY_NODE = "Gillenormand"
STRATEGIES = ("local", "global", "attribute")
K = 5


def main() -> int:
    out_dir = ROOT / "frontend" / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)

    graph = load_graph_file(ROOT / "src" / "gegraph" / "data" / "lesmis.json")
    session = build_session(graph, PipelineConfig(dataset="lesmis", seed=0))
    client = TestClient(create_app(session))

    captures: dict[str, str] = {
        "graph": "/api/graph",
        "layout": "/api/layout",
        "aggregation": "/api/aggregation",
        "metrics": "/api/metrics",
    }
    for node in session.aggregation.nodes:
        captures[f"expand_{node.community}"] = f"/api/expand/{node.community}"
    for strategy in STRATEGIES:
        captures[f"related_{QUERY_NODE}_{strategy}"] = (
            f"/api/related?node={QUERY_NODE}&strategy={strategy}&k={K}"
        )

    for name, path in captures.items():
        response = client.get(path)
        response.raise_for_status()
        target = out_dir / f"{name}.json"
        target.write_text(json.dumps(response.json(), indent=1) + "\n")
        print(f"wrote {target.relative_to(ROOT)} ({len(response.content)} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
