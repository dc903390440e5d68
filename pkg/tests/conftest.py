"""Shared fixtures: small graphs with known structure and one fast session."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from gegraph import (
    AttributedGraph,
    PipelineConfig,
    build_session,
    load_graph,
    load_graph_file,
)

LESMIS_PATH = Path(__file__).resolve().parents[1] / "src" / "gegraph" / "data" / "lesmis.json"


def graph_from(nodes, edges) -> AttributedGraph:
    return load_graph(json.dumps({"nodes": nodes, "edges": edges}))


def clique_nodes(prefix: str, size: int, **attrs):
    ids = [f"{prefix}{i}" for i in range(size)]
    nodes = [{"id": i, "attrs": dict(attrs)} if attrs else {"id": i} for i in ids]
    edges = [[ids[i], ids[j]] for i in range(size) for j in range(i + 1, size)]
    return nodes, edges


@pytest.fixture(scope="session")
def lesmis() -> AttributedGraph:
    return load_graph_file(LESMIS_PATH)


@pytest.fixture(scope="session")
def barbell() -> AttributedGraph:
    """Two 10-cliques bridged by one edge; each side carries a nominal tag."""
    nodes, edges = [], []
    for side, prefix in (("A", "a"), ("B", "b")):
        n, e = clique_nodes(prefix, 10, side=side)
        nodes += n
        edges += e
    edges.append(["a0", "b0"])
    return graph_from(nodes, edges)


@pytest.fixture(scope="session")
def quick_config() -> PipelineConfig:
    """Cheap settings for tests that need a full session, not full quality."""
    return PipelineConfig(
        dataset="fixture",
        dim=16,
        epochs=2,
        walk_length=20,
        walks_per_node=4,
        iterations=60,
        seed=7,
    )


@pytest.fixture(scope="session")
def quick_session(barbell, quick_config):
    return build_session(barbell, quick_config)


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
