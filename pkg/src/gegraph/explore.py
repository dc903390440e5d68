"""Interactive views over a finished layout.

Three products: an aggregation view that collapses each community to one
sized disc with width-coded inter-community edges, a Focus+Context expansion
that re-opens a single community inside a boundary circle with Bezier stubs
for its outgoing edges, and ranked related-node search over per-strategy
similarity matrices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .insight import CentralityTable, SimilarityMatrix
from .layout import PALETTE, LayoutResult

STRATEGIES = ("local", "global", "attribute")

DEFAULT_R_MIN = 0.03
DEFAULT_R_MAX = 0.12
DEFAULT_W_MIN = 0.002
DEFAULT_W_MAX = 0.012

EXPANSION_CIRCLE_SCALE = 1.5  # boundary circle over aggregated disc radius
EXPANSION_FILL = 0.85  # fraction of the boundary circle members may occupy
BEZIER_OFFSET = 0.1  # control-point offset as a fraction of chord length


@dataclass(frozen=True)
class AggregatedCommunity:
    community: int
    center: tuple[float, float]
    radius: float
    size: int
    label: str | None  # representative node id, if the community has one
    color: str

    def to_json_dict(self) -> dict:
        return {
            "community": self.community,
            "center": list(self.center),
            "radius": self.radius,
            "size": self.size,
            "label": self.label,
            "color": self.color,
        }


@dataclass(frozen=True)
class AggregatedEdge:
    communities: tuple[int, int]  # ordered pair, low id first
    count: int
    width: float

    def to_json_dict(self) -> dict:
        return {
            "communities": list(self.communities),
            "count": self.count,
            "width": self.width,
        }


@dataclass(frozen=True)
class AggregationView:
    nodes: tuple[AggregatedCommunity, ...]
    edges: tuple[AggregatedEdge, ...]

    def node_for(self, community: int) -> AggregatedCommunity:
        for node in self.nodes:
            if node.community == community:
                return node
        raise ValueError(f"unknown community {community}")

    def to_json_dict(self) -> dict:
        return {
            "nodes": [n.to_json_dict() for n in self.nodes],
            "edges": [e.to_json_dict() for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class CrossEdge:
    member: str  # node id inside the focused community
    far_node: str
    far_community: int
    interior: tuple[float, float]  # expanded member position
    anchor: tuple[float, float]  # on the boundary circle
    exterior: tuple[float, float]  # far community's aggregated center
    control1: tuple[float, float]
    control2: tuple[float, float]
    color: str

    def to_json_dict(self) -> dict:
        return {
            "member": self.member,
            "far_node": self.far_node,
            "far_community": self.far_community,
            "interior": list(self.interior),
            "anchor": list(self.anchor),
            "exterior": list(self.exterior),
            "control1": list(self.control1),
            "control2": list(self.control2),
            "color": self.color,
        }


@dataclass(frozen=True)
class ExpansionGeometry:
    community: int
    center: tuple[float, float]
    radius: float
    members: tuple[tuple[str, float, float], ...]  # (id, x, y) inside the circle
    cross_edges: tuple[CrossEdge, ...]

    def to_json_dict(self) -> dict:
        return {
            "community": self.community,
            "center": list(self.center),
            "radius": self.radius,
            "members": [{"id": i, "x": x, "y": y} for i, x, y in self.members],
            "cross_edges": [e.to_json_dict() for e in self.cross_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class SearchResult:
    query: str
    strategy: str
    ranked: tuple[tuple[str, float], ...]  # similarity non-increasing

    def to_json_dict(self) -> dict:
        return {
            "query": self.query,
            "strategy": self.strategy,
            "ranked": [{"id": i, "similarity": s} for i, s in self.ranked],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def build_aggregation(
    layout: LayoutResult,
    edges: Sequence[tuple[int, int]],
    communities,
    centrality: CentralityTable,
    names: Sequence[str],
    r_min: float = DEFAULT_R_MIN,
    r_max: float = DEFAULT_R_MAX,
    w_min: float = DEFAULT_W_MIN,
    w_max: float = DEFAULT_W_MAX,
) -> AggregationView:
    """Collapse communities to discs: area tracks size, edge width tracks count.

    Disc radius is ``r_min + (r_max - r_min) * sqrt(size / max size)`` so disc
    area stays roughly proportional to membership; width is linear in the
    number of real edges crossing the pair.
    """
    k = communities.k
    sizes = np.bincount(communities.assignment, minlength=k)
    if (sizes == 0).any():
        raise ValueError("every community must have at least one member")
    max_size = int(sizes.max())

    nodes = []
    for c in range(k):
        center = layout.positions[communities.members(c)].mean(axis=0)
        rep = centrality.representatives[c]
        nodes.append(
            AggregatedCommunity(
                community=c,
                center=(float(center[0]), float(center[1])),
                radius=r_min + (r_max - r_min) * math.sqrt(sizes[c] / max_size),
                size=int(sizes[c]),
                label=None if rep is None else names[rep],
                color=PALETTE[c % len(PALETTE)],
            )
        )

    counts: dict[tuple[int, int], int] = {}
    assignment = communities.assignment
    for u, v in edges:
        cu, cv = int(assignment[u]), int(assignment[v])
        if cu == cv:
            continue
        pair = (cu, cv) if cu < cv else (cv, cu)
        counts[pair] = counts.get(pair, 0) + 1
    max_count = max(counts.values()) if counts else 1
    agg_edges = tuple(
        AggregatedEdge(pair, count, w_min + (w_max - w_min) * count / max_count)
        for pair, count in sorted(counts.items())
    )
    return AggregationView(tuple(nodes), agg_edges)


def _circle_exit(interior: np.ndarray, toward: np.ndarray,
                 center: np.ndarray, radius: float) -> np.ndarray:
    """Where the ray from ``interior`` through ``toward`` leaves the circle."""
    d = toward - interior
    a = float(d @ d)
    if a < 1e-18:
        d = interior - center
        norm = float(np.linalg.norm(d))
        d = np.array([1.0, 0.0]) if norm < 1e-18 else d / norm
        return center + radius * d
    rel = interior - center
    b = 2.0 * float(rel @ d)
    c = float(rel @ rel) - radius * radius
    disc = b * b - 4.0 * a * c
    t = (-b + math.sqrt(max(disc, 0.0))) / (2.0 * a)
    return interior + t * d


def expand_community(
    view: AggregationView,
    layout: LayoutResult,
    community: int,
    edges: Sequence[tuple[int, int]],
    names: Sequence[str],
) -> ExpansionGeometry:
    """Open one aggregated community inside a boundary circle.

    The circle sits at the aggregated disc's center with 1.5x its radius and
    members keep their global-layout arrangement, rescaled about the bounding
    box center so the farthest member lands at 0.85x the circle radius.  Each
    cross-community edge becomes a cubic Bezier from the member to the far
    community's disc: it leaves the circle where the member-to-disc line
    crosses it, with control points a tenth of the chord length outside the
    anchor-to-disc chord.
    """
    agg = view.node_for(community)
    center = np.array(agg.center)
    radius = EXPANSION_CIRCLE_SCALE * agg.radius

    member_idx = layout.communities.members(community)
    global_pos = layout.positions[member_idx]
    box_center = (global_pos.min(axis=0) + global_pos.max(axis=0)) / 2.0
    offsets = global_pos - box_center
    reach = float(np.linalg.norm(offsets, axis=1).max())
    scale = (EXPANSION_FILL * radius / reach) if reach > 1e-12 else 0.0
    expanded = center + offsets * scale
    where = {int(node): expanded[j] for j, node in enumerate(member_idx)}

    assignment = layout.communities.assignment
    centers = {node.community: np.array(node.center) for node in view.nodes}
    cross = []
    for u, v in edges:
        cu, cv = int(assignment[u]), int(assignment[v])
        if (cu == community) == (cv == community):
            continue
        member, far = (u, v) if cu == community else (v, u)
        far_comm = int(assignment[far])
        interior = where[member]
        exterior = centers[far_comm]
        anchor = _circle_exit(interior, exterior, center, radius)
        chord = exterior - anchor
        length = float(np.linalg.norm(chord))
        if length < 1e-12:
            control1 = control2 = anchor.copy()
        else:
            perp = np.array([-chord[1], chord[0]]) / length
            if float(perp @ (anchor + chord / 2.0 - center)) < 0.0:
                perp = -perp
            bump = BEZIER_OFFSET * length * perp
            control1 = anchor + chord / 3.0 + bump
            control2 = anchor + 2.0 * chord / 3.0 + bump
        cross.append(
            CrossEdge(
                member=names[member],
                far_node=names[far],
                far_community=far_comm,
                interior=(float(interior[0]), float(interior[1])),
                anchor=(float(anchor[0]), float(anchor[1])),
                exterior=(float(exterior[0]), float(exterior[1])),
                control1=(float(control1[0]), float(control1[1])),
                control2=(float(control2[0]), float(control2[1])),
                color=PALETTE[far_comm % len(PALETTE)],
            )
        )

    members = tuple(
        (names[int(node)], float(where[int(node)][0]), float(where[int(node)][1]))
        for node in member_idx
    )
    return ExpansionGeometry(
        community=community,
        center=(float(center[0]), float(center[1])),
        radius=float(radius),
        members=members,
        cross_edges=tuple(cross),
    )


def related_nodes(
    query: str,
    strategy: str,
    k: int,
    presets: Mapping[str, SimilarityMatrix],
    names: Sequence[str],
) -> SearchResult:
    """Top-k most similar nodes under one strategy's similarity matrix.

    The query never appears in its own ranking; equal similarities rank the
    lower node index first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if strategy not in presets:
        raise ValueError(f"unknown strategy {strategy!r}")
    index = {name: i for i, name in enumerate(names)}
    if query not in index:
        raise ValueError(f"unknown node {query!r}")
    qi = index[query]
    row = presets[strategy].values[qi]
    order = np.lexsort((np.arange(len(row)), -row))
    ranked = tuple(
        (names[j], float(row[j])) for j in order if j != qi
    )[:k]
    return SearchResult(query, strategy, ranked)
