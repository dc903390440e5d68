"""Insights derived from embeddings: similarity, communities, centrality.

Similarity is 1 minus the min-max-normalized pairwise Euclidean distance, so
1 marks the closest pair in embedding space and 0 the farthest.  Communities
come from class labels when available, otherwise from k-means over the
embedding rows.  Centrality treats walks as sentences and ranks nodes by
TF-IDF over per-community documents to pick one representative per community.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .skipgram import EmbeddingMatrix
from .walks import WalkCorpus


@dataclass(frozen=True)
class SimilarityMatrix:
    values: np.ndarray  # (n, n) symmetric, entries in [0, 1], unit diagonal

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class CommunityAssignment:
    assignment: np.ndarray  # (n,) dense ids 0..k-1
    k: int
    source: str  # "labels" | "kmeans"

    def members(self, community: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == community)


@dataclass(frozen=True)
class CentralityTable:
    weights: np.ndarray  # (n,) TF-IDF weight per node
    representatives: tuple[int | None, ...]  # per community, None if empty


def pairwise_distances(x: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Exact Euclidean distance matrix, row-chunked to bound memory."""
    n = x.shape[0]
    out = np.empty((n, n))
    for lo in range(0, n, chunk):
        diff = x[lo : lo + chunk, None, :] - x[None, :, :]
        out[lo : lo + chunk] = np.sqrt((diff * diff).sum(axis=2))
    return out


def similarity_matrix(emb: EmbeddingMatrix) -> SimilarityMatrix:
    """Normalized closeness of every node pair in embedding space.

    Distances are min-max normalized over the off-diagonal entries; a
    degenerate range (all off-diagonal distances equal) maps everything to
    similarity 1.  The diagonal is pinned to 1.
    """
    if emb.n < 2:
        raise ValueError("need at least two nodes")
    dist = pairwise_distances(np.asarray(emb.vectors, dtype=float))
    off = ~np.eye(emb.n, dtype=bool)
    lo, hi = dist[off].min(), dist[off].max()
    if hi > lo:
        normalized = (dist - lo) / (hi - lo)
    else:
        normalized = np.zeros_like(dist)
    sim = 1.0 - normalized
    np.fill_diagonal(sim, 1.0)
    return SimilarityMatrix(sim)


# ---------------------------------------------------------------------------
# Communities


def kmeans(
    points: np.ndarray, k: int, seed: int = 0, max_iter: int = 300
) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """Lloyd's algorithm with k-means++ seeding.

    Returns (assignment, centers, inertia history); the history is the
    objective after each assignment step and never increases.  Empty clusters
    are refilled with the point farthest from its center.
    """
    n = points.shape[0]
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    centers = _kmeans_pp(points, k, rng)
    assignment = np.zeros(n, dtype=np.int64)
    history: list[float] = []
    for _ in range(max_iter):
        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_assignment = d2.argmin(axis=1)
        history.append(float(d2[np.arange(n), new_assignment].sum()))
        if history[-1] == 0.0 or (
            len(history) > 1 and np.array_equal(new_assignment, assignment)
        ):
            assignment = new_assignment
            break
        assignment = new_assignment
        for c in range(k):
            members = points[assignment == c]
            if len(members):
                centers[c] = members.mean(axis=0)
        for c in range(k):
            if not np.any(assignment == c):
                dists = ((points - centers[assignment]) ** 2).sum(axis=1)
                centers[c] = points[int(dists.argmax())]
    return assignment, centers, history


def _kmeans_pp(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[int(rng.integers(n))]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for i in range(1, k):
        total = d2.sum()
        if total <= 0:
            centers[i] = points[int(rng.integers(n))]
            continue
        target = rng.random() * total
        centers[i] = points[int(np.searchsorted(np.cumsum(d2), target, side="right"))]
        d2 = np.minimum(d2, ((points - centers[i]) ** 2).sum(axis=1))
    return centers


def cluster_nodes(emb: EmbeddingMatrix, k: int, seed: int = 0) -> CommunityAssignment:
    if not 1 <= k <= emb.n:
        raise ValueError(f"k must be within [1, {emb.n}]")
    assignment, _, _ = kmeans(np.asarray(emb.vectors, dtype=float), k, seed)
    return CommunityAssignment(assignment, k, "kmeans")


def communities_from_labels(labels: Sequence[str]) -> CommunityAssignment:
    """Dense community ids from class labels, ordered by first appearance."""
    ids: dict[str, int] = {}
    assignment = np.array([ids.setdefault(lb, len(ids)) for lb in labels])
    return CommunityAssignment(assignment, len(ids), "labels")


# ---------------------------------------------------------------------------
# TF-IDF centrality


def centrality(corpus: WalkCorpus, communities: CommunityAssignment) -> CentralityTable:
    """TF-IDF node weights over per-community walk documents.

    The document of community c concatenates every walk started from one of
    its nodes, with virtual tokens dropped.  A node is scored by its term
    frequency in its own community's document times log(k / (1 + document
    frequency)), floored at zero; idf degenerates to a constant 1 when k = 1
    so frequency alone ranks a single document.
    """
    if not corpus.walks:
        raise ValueError("corpus is empty")
    n, k = corpus.n_real, communities.k
    doc_counts = np.zeros((k, n))
    for walk in corpus.walks:
        community = int(communities.assignment[int(walk[0])])
        real = walk[walk < n]
        doc_counts[community] += np.bincount(real, minlength=n)

    doc_sizes = doc_counts.sum(axis=1)
    df = (doc_counts > 0).sum(axis=0)
    if k == 1:
        idf = np.ones(n)
    else:
        with np.errstate(divide="ignore"):
            idf = np.log(k / (1.0 + df))
    own = communities.assignment
    own_size = np.where(doc_sizes[own] > 0, doc_sizes[own], 1.0)
    tf = doc_counts[own, np.arange(n)] / own_size
    weights = np.maximum(tf * idf, 0.0)

    reps: list[int | None] = []
    for c in range(k):
        members = communities.members(c)
        if len(members) == 0 or doc_sizes[c] == 0:
            reps.append(None)
            continue
        best = members[int(np.argmax(weights[members]))]
        reps.append(int(best))
    return CentralityTable(weights, tuple(reps))
