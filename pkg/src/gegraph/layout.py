"""Embedding-enhanced adjacency and the weighted force-directed layout.

The adjacency and similarity matrices are blended entrywise, re-normalized,
and truncated with a community-sensitive threshold: pairs inside one
community keep entries from ``t_ein`` upward, pairs across communities only
from ``t_eout`` upward.  The result acts as a weighted edge set for a
Fruchterman-Reingold simulation whose attraction scales with the entry
weight while repulsion stays all-pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .insight import CommunityAssignment

#: Community color palette for SVG and UI rendering, cycled past 12 entries.
PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
)


@dataclass(frozen=True)
class EnhancedAdjacency:
    values: np.ndarray  # (n, n) symmetric, zero diagonal, entries in [0, 1]
    w: float
    t_ein: float
    t_eout: float

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class LayoutResult:
    positions: np.ndarray  # (n, 2), unit square
    communities: CommunityAssignment
    provenance: Mapping[str, object] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.positions.shape[0]


def truncate(x: float, t_e: float) -> float:
    """Zero out values strictly below the threshold; keep the boundary."""
    return 0.0 if x < t_e else x


def blend(adjacency: np.ndarray, similarity: np.ndarray, w: float) -> np.ndarray:
    """Weighted sum of topology and embedding similarity, affine in w."""
    if adjacency.shape != similarity.shape:
        raise ValueError("adjacency and similarity shapes differ")
    if not 0.0 <= w <= 1.0:
        raise ValueError("w must lie in [0, 1]")
    return w * adjacency + (1.0 - w) * similarity


def minmax_offdiagonal(matrix: np.ndarray) -> np.ndarray:
    """Min-max normalize over off-diagonal entries; a flat range maps to 1."""
    off = ~np.eye(matrix.shape[0], dtype=bool)
    lo, hi = matrix[off].min(), matrix[off].max()
    if hi > lo:
        return (matrix - lo) / (hi - lo)
    return np.ones_like(matrix)


def enhanced_adjacency(
    adjacency: np.ndarray,
    similarity: np.ndarray,
    communities: CommunityAssignment,
    w: float = 0.4,
    t_ein: float = 0.4,
    t_eout: float = 0.6,
) -> EnhancedAdjacency:
    """Blend, renormalize, and community-truncate into the layout's edge weights."""
    if t_ein > t_eout:
        raise ValueError("t_ein must not exceed t_eout")
    n = adjacency.shape[0]
    if communities.assignment.shape[0] != n:
        raise ValueError("community assignment size mismatch")
    mixed = minmax_offdiagonal(blend(adjacency, similarity, w))
    same = communities.assignment[:, None] == communities.assignment[None, :]
    thresholds = np.where(same, t_ein, t_eout)
    values = np.where(mixed < thresholds, 0.0, mixed)
    np.fill_diagonal(values, 0.0)
    return EnhancedAdjacency(values, w, t_ein, t_eout)


# ---------------------------------------------------------------------------
# Force simulation


def simulate_forces(
    weights: np.ndarray,
    iterations: int = 500,
    spacing: float | None = None,
    seed: int = 0,
    start_temperature: float = 0.1,
) -> tuple[np.ndarray, np.ndarray]:
    """Run the annealed force loop on raw coordinates.

    Attraction d^2/k applies along every nonzero weight entry, scaled by the
    entry; repulsion k^2/d applies between all pairs.  Per-node displacement
    is capped by a temperature that cools linearly to zero.  Returns the raw
    positions and the total capped displacement per iteration.
    """
    n = weights.shape[0]
    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    pos = rng.random((n, 2))
    if n <= 1:
        return pos, np.zeros(iterations)
    k = spacing if spacing is not None else np.sqrt(1.0 / n)
    movement = np.zeros(iterations)
    for it in range(iterations):
        temperature = start_temperature * (1.0 - it / iterations)
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        # net scalar force per pair: positive pushes apart
        force = k * k / dist - weights * dist * dist / k
        np.fill_diagonal(force, 0.0)
        disp = (diff / dist[:, :, None] * force[:, :, None]).sum(axis=1)
        length = np.sqrt((disp * disp).sum(axis=1))
        step = np.minimum(length, temperature)
        movement[it] = step.sum()
        safe = np.maximum(length, 1e-12)
        pos = pos + disp / safe[:, None] * step[:, None]
    return pos, movement


def rescale_unit_square(pos: np.ndarray) -> np.ndarray:
    """Uniformly scale into [0, 1]^2, centering the shorter axis."""
    if pos.shape[0] == 0:
        return pos.copy()
    lo = pos.min(axis=0)
    extent = pos.max(axis=0) - lo
    span = float(extent.max())
    if span < 1e-12:
        return np.full_like(pos, 0.5)
    scaled = (pos - lo) / span
    return scaled + (1.0 - extent / span) / 2.0


def fr_layout(
    m: EnhancedAdjacency,
    communities: CommunityAssignment,
    iterations: int = 500,
    spacing: float | None = None,
    seed: int = 0,
    provenance: Mapping[str, object] | None = None,
) -> LayoutResult:
    """Force-directed positions in the unit square, deterministic per seed."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    raw, _ = simulate_forces(m.values, iterations, spacing, seed)
    return LayoutResult(rescale_unit_square(raw), communities, dict(provenance or {}))


# ---------------------------------------------------------------------------
# Serialization


def layout_to_json(
    layout: LayoutResult, names: Sequence[str], edges: Sequence[tuple[int, int]]
) -> str:
    doc = {
        "params": dict(layout.provenance),
        "nodes": [
            {
                "id": names[i],
                "x": float(layout.positions[i, 0]),
                "y": float(layout.positions[i, 1]),
                "community": int(layout.communities.assignment[i]),
            }
            for i in range(layout.n)
        ],
        "edges": [[names[u], names[v]] for u, v in edges],
    }
    return json.dumps(doc)


def layout_from_json(text: str) -> tuple[dict, LayoutResult, list[str], list[tuple[int, int]]]:
    """Parse a layout document back into (params, layout, names, index edges)."""
    doc = json.loads(text)
    nodes = doc["nodes"]
    names = [entry["id"] for entry in nodes]
    index = {name: i for i, name in enumerate(names)}
    positions = np.array([[entry["x"], entry["y"]] for entry in nodes], dtype=float)
    if positions.size == 0:
        positions = positions.reshape(0, 2)
    assignment = np.array([int(entry["community"]) for entry in nodes], dtype=np.int64)
    k = int(assignment.max()) + 1 if len(assignment) else 0
    communities = CommunityAssignment(assignment, k, str(doc["params"].get("communities", "labels")))
    edges = [(index[a], index[b]) for a, b in doc["edges"]]
    return doc["params"], LayoutResult(positions, communities, doc["params"]), names, edges


def layout_to_svg(
    layout: LayoutResult,
    names: Sequence[str],
    edges: Sequence[tuple[int, int]],
    size: int = 1000,
    node_radius: float = 6.0,
) -> str:
    """Node-link rendering: community-colored circles over line segments."""
    xy = layout.positions * size
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for u, v in edges:
        parts.append(
            f'<line x1="{xy[u, 0]:.2f}" y1="{xy[u, 1]:.2f}" '
            f'x2="{xy[v, 0]:.2f}" y2="{xy[v, 1]:.2f}" '
            'stroke="#999999" stroke-width="1" stroke-opacity="0.6"/>'
        )
    for i in range(layout.n):
        color = PALETTE[int(layout.communities.assignment[i]) % len(PALETTE)]
        parts.append(
            f'<circle cx="{xy[i, 0]:.2f}" cy="{xy[i, 1]:.2f}" r="{node_radius}" '
            f'fill="{color}" stroke="white" stroke-width="1">'
            f"<title>{names[i]}</title></circle>"
        )
    parts.append("</svg>")
    return "\n".join(parts)
