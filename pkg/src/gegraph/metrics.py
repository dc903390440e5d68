"""Readability metrics for a positioned, community-assigned node-link layout.

Nine scores: node spread and occlusions, edge crossings overall and between
communities, minimum incident angle, edge length variation, convex-hull group
overlap, grid community entropy, and radius-weighted spatial autocorrelation.
Lower is better for everything except the minimum-angle score, which is
reported both in its 1-minus-deviation form (canonical) and as the raw mean
deviation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .insight import CommunityAssignment
from .layout import LayoutResult

DEFAULT_OCCLUSION_THRESHOLD = 0.01 * math.sqrt(2.0)  # 1% of the unit-square diagonal
DEFAULT_GRID_SIZE = 8
DEFAULT_RADIUS = 0.1

CSV_COLUMNS = (
    "dataset", "method",
    "N_sp", "N_oc", "E_c", "E_c_outside", "M_a", "M_l", "G_o", "H", "C",
)


@dataclass(frozen=True)
class LayoutUnderTest:
    positions: np.ndarray  # (n, 2), unit square
    edges: tuple[tuple[int, int], ...]
    communities: CommunityAssignment

    @classmethod
    def from_layout(cls, layout: LayoutResult, edges: Sequence[tuple[int, int]]):
        return cls(layout.positions, tuple(edges), layout.communities)

    @property
    def n(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class MetricsReport:
    N_sp: float
    N_oc: float
    E_c: float
    E_c_outside: float
    M_a: float
    M_l: float
    G_o: float
    H: float
    C: float
    M_a_deviation: float  # raw mean angle deviation, 1 - M_a
    occlusion_threshold: float
    grid_size: int
    radius: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    def csv_row(self, dataset: str, method: str) -> str:
        scores = [getattr(self, c) for c in CSV_COLUMNS[2:]]
        return ",".join([dataset, method] + [f"{s:.6f}" for s in scores])


def node_spread(l: LayoutUnderTest) -> float:
    """Mean over communities of the mean member distance to the community centroid."""
    spreads = []
    for c in range(l.communities.k):
        members = l.positions[l.communities.members(c)]
        if len(members) == 0:
            raise ValueError(f"community {c} is empty")
        center = members.mean(axis=0)
        spreads.append(float(np.linalg.norm(members - center, axis=1).mean()))
    return float(np.mean(spreads)) if spreads else 0.0


def node_occlusions(l: LayoutUnderTest, threshold: float = DEFAULT_OCCLUSION_THRESHOLD) -> float:
    """Fraction of node pairs closer than the coincidence threshold."""
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    n = l.n
    if n < 2:
        return 0.0
    dist = np.sqrt(((l.positions[:, None, :] - l.positions[None, :, :]) ** 2).sum(axis=2))
    close = int((dist[np.triu_indices(n, 1)] < threshold).sum())
    return close / (n * (n - 1) / 2)


def _proper_crossing(p1, p2, p3, p4) -> bool:
    """True iff segments (p1,p2) and (p3,p4) intersect at interior points of both."""

    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return 0 if v == 0 else (1 if v > 0 else -1)

    o1 = orient(p1, p2, p3)
    o2 = orient(p1, p2, p4)
    o3 = orient(p3, p4, p1)
    o4 = orient(p3, p4, p2)
    return o1 * o2 < 0 and o3 * o4 < 0


def edge_crossings(l: LayoutUnderTest) -> tuple[float, float]:
    """(crossed fraction of all edge pairs, same restricted to cross-community pairs).

    Pairs sharing an endpoint never count, in either numerator or denominator
    contribution beyond the pair total.
    """
    m = len(l.edges)
    if m < 2:
        return 0.0, 0.0
    pos = l.positions
    comm = l.communities.assignment
    outside = [comm[u] != comm[v] for u, v in l.edges]
    total = crossed = 0
    total_out = crossed_out = 0
    for i in range(m):
        u1, v1 = l.edges[i]
        for j in range(i + 1, m):
            u2, v2 = l.edges[j]
            total += 1
            both_out = outside[i] and outside[j]
            if both_out:
                total_out += 1
            if {u1, v1} & {u2, v2}:
                continue
            if _proper_crossing(pos[u1], pos[v1], pos[u2], pos[v2]):
                crossed += 1
                if both_out:
                    crossed_out += 1
    e_c = crossed / total
    e_c_outside = crossed_out / total_out if total_out else 0.0
    return e_c, e_c_outside


def minimum_angle(l: LayoutUnderTest) -> float:
    """One minus the mean relative deviation from the ideal fan-out angle.

    Only nodes of degree >= 2 contribute; with none the score is 1.  The real
    angle is the smallest gap between consecutive incident edge directions.
    """
    incident: dict[int, list[int]] = {}
    for u, v in l.edges:
        incident.setdefault(u, []).append(v)
        incident.setdefault(v, []).append(u)
    deviations = []
    for node, nbrs in incident.items():
        if len(nbrs) < 2:
            continue
        vecs = l.positions[nbrs] - l.positions[node]
        angles = np.sort(np.arctan2(vecs[:, 1], vecs[:, 0]))
        gaps = np.diff(np.r_[angles, angles[0] + 2 * np.pi])
        theta_real = math.degrees(float(gaps.min()))
        theta_ideal = 360.0 / len(nbrs)
        deviations.append(abs(theta_ideal - theta_real) / theta_ideal)
    if not deviations:
        return 1.0
    return 1.0 - float(np.mean(deviations))


def edge_length_variation(l: LayoutUnderTest) -> float:
    """Coefficient of variation (population sigma over mean) of edge lengths."""
    if not l.edges:
        return 0.0
    idx = np.array(l.edges)
    lengths = np.linalg.norm(l.positions[idx[:, 0]] - l.positions[idx[:, 1]], axis=1)
    mean = float(lengths.mean())
    if mean == 0.0:
        return 0.0
    return float(lengths.std()) / mean


def _hull_contains(hull_points: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Strict containment of query points in the convex hull of hull_points.

    Degenerate hulls (fewer than 3 non-collinear points) contain nothing.
    """
    result = np.zeros(len(queries), dtype=bool)
    if len(hull_points) < 3:
        return result
    try:
        hull = ConvexHull(hull_points)
    except QhullError:
        return result
    # hull.equations: outward normals, A x + b <= 0 inside
    a, b = hull.equations[:, :2], hull.equations[:, 2]
    values = queries @ a.T + b
    return (values < -1e-12).all(axis=1)


def group_overlap(l: LayoutUnderTest) -> float:
    """Mean fraction of foreign nodes falling strictly inside each community hull."""
    k = l.communities.k
    if k < 2:
        return 0.0
    fractions = []
    for c in range(k):
        mine = l.communities.members(c)
        others = np.flatnonzero(l.communities.assignment != c)
        if len(others) == 0:
            fractions.append(0.0)
            continue
        inside = _hull_contains(l.positions[mine], l.positions[others])
        fractions.append(float(inside.sum()) / len(others))
    return float(np.mean(fractions))


def community_entropy(l: LayoutUnderTest, grid_size: int = DEFAULT_GRID_SIZE) -> float:
    """Mean Shannon entropy of community mixes over non-empty unit-square cells."""
    if grid_size < 1:
        raise ValueError("grid_size must be >= 1")
    if l.n == 0:
        return 0.0
    cells = np.clip((l.positions * grid_size).astype(int), 0, grid_size - 1)
    cell_id = cells[:, 0] * grid_size + cells[:, 1]
    entropies = []
    for cid in np.unique(cell_id):
        comms = l.communities.assignment[cell_id == cid]
        _, counts = np.unique(comms, return_counts=True)
        p = counts / counts.sum()
        entropies.append(float(-(p * np.log2(p)).sum()))
    return float(np.mean(entropies))


def spatial_autocorrelation(l: LayoutUnderTest, radius: float = DEFAULT_RADIUS) -> float:
    """Weighted fraction of different-community neighbors within the radius.

    Neighbor j of node i contributes weight 1 - distance/radius; the node
    score is the weighted mean of the same/different indicator (0 for same
    community) and the total is the mean over nodes with any neighbor.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if l.n < 2:
        return 0.0
    dist = np.sqrt(((l.positions[:, None, :] - l.positions[None, :, :]) ** 2).sum(axis=2))
    comm = l.communities.assignment
    diff = (comm[:, None] != comm[None, :]).astype(float)
    scores = []
    for i in range(l.n):
        mask = (dist[i] < radius) & (np.arange(l.n) != i)
        if not mask.any():
            continue
        weights = 1.0 - dist[i][mask] / radius
        denom = weights.sum()
        if denom <= 0:
            continue
        scores.append(float((weights * diff[i][mask]).sum() / denom))
    return float(np.mean(scores)) if scores else 0.0


def full_report(
    l: LayoutUnderTest,
    occlusion_threshold: float = DEFAULT_OCCLUSION_THRESHOLD,
    grid_size: int = DEFAULT_GRID_SIZE,
    radius: float = DEFAULT_RADIUS,
) -> MetricsReport:
    """All nine scores under one parameter set, parameters echoed in the report."""
    if l.n == 0:
        return MetricsReport(0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
                             occlusion_threshold, grid_size, radius)
    e_c, e_c_outside = edge_crossings(l)
    m_a = minimum_angle(l)
    return MetricsReport(
        N_sp=node_spread(l),
        N_oc=node_occlusions(l, occlusion_threshold),
        E_c=e_c,
        E_c_outside=e_c_outside,
        M_a=m_a,
        M_l=edge_length_variation(l),
        G_o=group_overlap(l),
        H=community_entropy(l, grid_size),
        C=spatial_autocorrelation(l, radius),
        M_a_deviation=1.0 - m_a,
        occlusion_threshold=occlusion_threshold,
        grid_size=grid_size,
        radius=radius,
    )
