"""Embedding-guided graph layout and exploration.

Pipeline: attributed graph -> virtual-node extension -> biased random walks
-> skip-gram embedding -> similarity fusion with the adjacency matrix ->
force-directed layout, plus readability metrics, a community aggregation
view with Focus+Context expansion, and multi-strategy related-node search.
"""

from .graph_model import (
    AttributedGraph,
    AttributeBinning,
    ExtendedGraph,
    GraphFormatError,
    binnings_for,
    discretize_attribute,
    extend_graph,
    load_graph,
    load_graph_file,
)
from .walks import ProximityPreset, WalkCorpus, WalkParams, generate_walks, preset
from .skipgram import EmbeddingMatrix, train_skipgram
from .insight import (
    CentralityTable,
    CommunityAssignment,
    SimilarityMatrix,
    centrality,
    cluster_nodes,
    communities_from_labels,
    kmeans,
    similarity_matrix,
)
from .layout import (
    PALETTE,
    EnhancedAdjacency,
    LayoutResult,
    enhanced_adjacency,
    fr_layout,
    layout_from_json,
    layout_to_json,
    layout_to_svg,
)
from .metrics import LayoutUnderTest, MetricsReport, full_report
from .explore import (
    AggregationView,
    ExpansionGeometry,
    SearchResult,
    STRATEGIES,
    build_aggregation,
    expand_community,
    related_nodes,
)
from .pipeline import (
    PipelineArtifacts,
    PipelineConfig,
    SessionState,
    build_session,
    run_layout_pipeline,
)

__version__ = "0.1.0"

__all__ = [
    "AttributedGraph",
    "AttributeBinning",
    "ExtendedGraph",
    "GraphFormatError",
    "binnings_for",
    "discretize_attribute",
    "extend_graph",
    "load_graph",
    "load_graph_file",
    "ProximityPreset",
    "WalkCorpus",
    "WalkParams",
    "generate_walks",
    "preset",
    "EmbeddingMatrix",
    "train_skipgram",
    "CentralityTable",
    "CommunityAssignment",
    "SimilarityMatrix",
    "centrality",
    "cluster_nodes",
    "communities_from_labels",
    "kmeans",
    "similarity_matrix",
    "PALETTE",
    "EnhancedAdjacency",
    "LayoutResult",
    "enhanced_adjacency",
    "fr_layout",
    "layout_from_json",
    "layout_to_json",
    "layout_to_svg",
    "LayoutUnderTest",
    "MetricsReport",
    "full_report",
    "AggregationView",
    "ExpansionGeometry",
    "SearchResult",
    "STRATEGIES",
    "build_aggregation",
    "expand_community",
    "related_nodes",
    "PipelineArtifacts",
    "PipelineConfig",
    "SessionState",
    "build_session",
    "run_layout_pipeline",
    "__version__",
]
