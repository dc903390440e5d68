"""End-to-end assembly: graph file in, positioned community layout out.

`run_layout_pipeline` chains extension, walks, skip-gram, similarity,
communities, centrality, matrix fusion, and force simulation under one
config.  `build_session` additionally trains the three search-strategy
embeddings and precomputes the aggregation view and metrics so a service can
answer every request from immutable state.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Mapping

import numpy as np

from . import explore, metrics
from .explore import AggregationView, STRATEGIES
from .graph_model import AttributedGraph, ExtendedGraph, binnings_for, extend_graph
from .insight import (
    CentralityTable,
    CommunityAssignment,
    SimilarityMatrix,
    centrality,
    cluster_nodes,
    communities_from_labels,
    similarity_matrix,
)
from .layout import EnhancedAdjacency, LayoutResult, enhanced_adjacency, fr_layout
from .skipgram import EmbeddingMatrix, train_skipgram
from .walks import WalkCorpus, WalkParams, generate_walks, preset

# Stage tags keep per-stage random streams independent of each other while
# everything still derives from the single user-facing seed.
SEED_WALKS = 1
SEED_SKIPGRAM = 2
SEED_KMEANS = 3
SEED_LAYOUT = 4


def derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


@dataclass(frozen=True)
class PipelineConfig:
    dataset: str | None = None
    # walk biases for the layout embedding
    p: float = 1.0
    q: float = 0.5
    r: float = 0.5
    # skip-gram
    dim: int = 64
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    walk_length: int = 80
    walks_per_node: int = 10
    # communities (used only when the graph carries no complete labels)
    k: int = 8
    # matrix fusion
    w: float = 0.4
    t_ein: float = 0.4
    t_eout: float = 0.6
    # force simulation
    iterations: int = 500
    # discretization
    max_bins: int = 8
    confidence: float = 0.95
    # metric parameters
    occlusion_threshold: float = metrics.DEFAULT_OCCLUSION_THRESHOLD
    grid_size: int = metrics.DEFAULT_GRID_SIZE
    radius: float = metrics.DEFAULT_RADIUS
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.w <= 1.0:
            raise ValueError("w must be in [0, 1]")
        if self.t_ein > self.t_eout:
            raise ValueError("t_ein must not exceed t_eout")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    @property
    def is_baseline(self) -> bool:
        """Degenerate settings that reduce fusion to the plain adjacency."""
        return self.w == 1.0 and self.t_ein == 0.0 and self.t_eout == 0.0

    def to_json_dict(self) -> dict:
        return asdict(self)

    def walk_params(self, seed: int) -> WalkParams:
        return WalkParams(
            p=self.p,
            q=self.q,
            r=self.r,
            walk_length=self.walk_length,
            walks_per_node=self.walks_per_node,
            seed=seed,
        )


@dataclass(frozen=True)
class PipelineArtifacts:
    config: PipelineConfig
    graph: AttributedGraph
    extended: ExtendedGraph
    corpus: WalkCorpus
    embedding: EmbeddingMatrix
    similarity: SimilarityMatrix
    communities: CommunityAssignment
    centrality: CentralityTable
    enhanced: EnhancedAdjacency
    layout: LayoutResult


def _provenance(config: PipelineConfig, communities: CommunityAssignment) -> dict:
    return {
        "method": "baseline" if config.is_baseline else "gegraph",
        "communities": communities.source,
        "config": config.to_json_dict(),
    }


def run_layout_pipeline(graph: AttributedGraph, config: PipelineConfig) -> PipelineArtifacts:
    """Every stage from the raw graph to unit-square positions, one seed."""
    binnings = binnings_for(graph, config.max_bins, config.confidence)
    extended = extend_graph(graph, binnings)

    corpus = generate_walks(
        extended, config.walk_params(derive_seed(config.seed, SEED_WALKS))
    )
    embedding = train_skipgram(
        corpus,
        dim=config.dim,
        window=config.window,
        negatives=config.negatives,
        epochs=config.epochs,
        seed=derive_seed(config.seed, SEED_SKIPGRAM),
    )
    similarity = similarity_matrix(embedding)

    if graph.labels is not None:
        communities = communities_from_labels(graph.labels)
    else:
        communities = cluster_nodes(
            embedding, min(config.k, graph.n), derive_seed(config.seed, SEED_KMEANS)
        )
    table = centrality(corpus, communities)

    enhanced = enhanced_adjacency(
        graph.adjacency_matrix(),
        similarity.values,
        communities,
        w=config.w,
        t_ein=config.t_ein,
        t_eout=config.t_eout,
    )
    layout = fr_layout(
        enhanced,
        communities,
        iterations=config.iterations,
        seed=derive_seed(config.seed, SEED_LAYOUT),
        provenance=_provenance(config, communities),
    )
    return PipelineArtifacts(
        config=config,
        graph=graph,
        extended=extended,
        corpus=corpus,
        embedding=embedding,
        similarity=similarity,
        communities=communities,
        centrality=table,
        enhanced=enhanced,
        layout=layout,
    )


def layout_under_test(arts: PipelineArtifacts) -> metrics.LayoutUnderTest:
    return metrics.LayoutUnderTest.from_layout(arts.layout, arts.graph.edges)


def report_for(arts: PipelineArtifacts) -> metrics.MetricsReport:
    c = arts.config
    return metrics.full_report(
        layout_under_test(arts), c.occlusion_threshold, c.grid_size, c.radius
    )


@dataclass(frozen=True)
class SessionState:
    """Everything a service needs, computed once and never mutated."""

    config: PipelineConfig
    artifacts: PipelineArtifacts
    strategy_similarities: Mapping[str, SimilarityMatrix]
    aggregation: AggregationView
    report: metrics.MetricsReport

    @property
    def graph(self) -> AttributedGraph:
        return self.artifacts.graph

    @property
    def layout(self) -> LayoutResult:
        return self.artifacts.layout


def strategy_similarity(
    extended: ExtendedGraph, config: PipelineConfig, strategy: str, index: int
) -> SimilarityMatrix:
    """Train one search strategy's embedding and reduce it to similarities."""
    bias = preset(
        strategy,
        seed=derive_seed(config.seed, SEED_WALKS, index),
        walk_length=config.walk_length,
        walks_per_node=config.walks_per_node,
    )
    corpus = generate_walks(extended, bias.params)
    embedding = train_skipgram(
        corpus,
        dim=config.dim,
        window=config.window,
        negatives=config.negatives,
        epochs=config.epochs,
        seed=derive_seed(config.seed, SEED_SKIPGRAM, index),
    )
    return similarity_matrix(embedding)


def build_session(graph: AttributedGraph, config: PipelineConfig) -> SessionState:
    """Layout pipeline plus the three search embeddings and derived views."""
    arts = run_layout_pipeline(graph, config)
    similarities = {
        name: strategy_similarity(arts.extended, config, name, i + 1)
        for i, name in enumerate(STRATEGIES)
    }
    aggregation = explore.build_aggregation(
        arts.layout, graph.edges, arts.communities, arts.centrality, graph.names
    )
    return SessionState(
        config=config,
        artifacts=arts,
        strategy_similarities=similarities,
        aggregation=aggregation,
        report=report_for(arts),
    )
