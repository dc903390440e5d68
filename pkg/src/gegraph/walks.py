"""Biased random walks over an extended graph.

The next step from ``cur`` given the previous node is weighted 1/r whenever
either endpoint of the candidate edge is a virtual attribute node; otherwise
the weight depends on the hop distance between the previous node and the
candidate: 1/p for a return step, 1 for a step to a mutual neighbor of the
previous node, 1/q for an outward step.  Lowering p, q, or r below the other
two (and 1) therefore biases walks toward local structure, global structure,
or shared attribute values respectively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_model import ExtendedGraph


@dataclass(frozen=True)
class WalkParams:
    p: float = 1.0
    q: float = 0.5
    r: float = 0.5
    walk_length: int = 80
    walks_per_node: int = 10
    seed: int = 0

    def __post_init__(self):
        if min(self.p, self.q, self.r) <= 0:
            raise ValueError("p, q, r must be positive")
        if self.walk_length < 2:
            raise ValueError("walk_length must be >= 2")
        if self.walks_per_node < 1:
            raise ValueError("walks_per_node must be >= 1")


@dataclass(frozen=True)
class ProximityPreset:
    """Named bias regime; the constraint on (p, q, r) is what makes the name true."""

    name: str
    params: WalkParams

    def __post_init__(self):
        p, q, r = self.params.p, self.params.q, self.params.r
        ok = {
            "local": p < min(q, r, 1.0),
            "global": q < min(p, r, 1.0),
            "attribute": r < min(p, q, 1.0),
        }
        if self.name not in ok:
            raise ValueError(f"unknown preset name {self.name!r}")
        if not ok[self.name]:
            raise ValueError(f"params do not satisfy the {self.name} regime")


def preset(name: str, seed: int = 0, **overrides) -> ProximityPreset:
    base = {
        "local": dict(p=0.25, q=1.0, r=1.0),
        "global": dict(p=1.0, q=0.25, r=1.0),
        "attribute": dict(p=1.0, q=1.0, r=0.25),
    }[name]
    base.update(overrides)
    return ProximityPreset(name, WalkParams(seed=seed, **base))


@dataclass(frozen=True)
class WalkCorpus:
    """Sampled walks as token index sequences over the extended node set."""

    walks: tuple[np.ndarray, ...]
    n_tokens: int  # vocabulary size = real + virtual nodes
    n_real: int

    def to_text(self) -> str:
        return "\n".join(" ".join(str(t) for t in walk) for walk in self.walks)

    def token_counts(self) -> np.ndarray:
        if not self.walks:
            return np.zeros(self.n_tokens, dtype=np.int64)
        return np.bincount(np.concatenate(self.walks), minlength=self.n_tokens)


def transition_weight(
    prev: int | None, cur: int, nxt: int, params: WalkParams, g: ExtendedGraph
) -> float:
    """Unnormalized probability of stepping from ``cur`` to ``nxt``.

    ``prev`` is the node visited before ``cur``, or None on the first step of
    a walk, where every real candidate weighs 1 (virtual candidates still
    weigh 1/r).
    """
    if not g.has_edge(cur, nxt):
        raise ValueError(f"({cur}, {nxt}) is not an edge of the extended graph")
    if g.is_virtual(cur) or g.is_virtual(nxt):
        return 1.0 / params.r
    if prev is None:
        return 1.0
    if nxt == prev:
        return 1.0 / params.p
    if g.has_edge(prev, nxt):
        return 1.0
    return 1.0 / params.q


def step_weights(
    prev: int | None, cur: int, params: WalkParams, g: ExtendedGraph
) -> tuple[np.ndarray, np.ndarray]:
    """Neighbor array of ``cur`` and the matching unnormalized weights."""
    nbrs = g.neighbors[cur]
    weights = np.array(
        [transition_weight(prev, cur, int(x), params, g) for x in nbrs], dtype=float
    )
    return nbrs, weights


class _Walker:
    """Cumulative-weight tables per (prev, cur), built on demand."""

    def __init__(self, g: ExtendedGraph, params: WalkParams):
        self.g = g
        self.params = params
        self._tables: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}

    def _table(self, prev: int | None, cur: int) -> tuple[np.ndarray, np.ndarray]:
        key = (-1 if prev is None else prev, cur)
        table = self._tables.get(key)
        if table is None:
            nbrs, weights = step_weights(prev, cur, self.params, self.g)
            table = (nbrs, np.cumsum(weights))
            self._tables[key] = table
        return table

    def sample_next(self, prev: int | None, cur: int, rng: np.random.Generator) -> int:
        nbrs, cum = self._table(prev, cur)
        i = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        return int(nbrs[min(i, len(nbrs) - 1)])

    def walk_from(self, start: int, rng: np.random.Generator) -> np.ndarray:
        walk = [start]
        prev: int | None = None
        while len(walk) < self.params.walk_length:
            cur = walk[-1]
            if len(self.g.neighbors[cur]) == 0:
                break
            nxt = self.sample_next(prev, cur, rng)
            walk.append(nxt)
            prev = cur
        return np.array(walk, dtype=np.int64)


def generate_walks(g: ExtendedGraph, params: WalkParams) -> WalkCorpus:
    """``walks_per_node`` biased walks from every real node, seed-deterministic.

    Walks are emitted round by round over the real nodes in index order; an
    isolated node yields a length-1 walk.
    """
    if g.n_real < 1:
        raise ValueError("graph has no real nodes")
    rng = np.random.default_rng(np.random.SeedSequence([params.seed]))
    walker = _Walker(g, params)
    walks = [
        walker.walk_from(start, rng)
        for _ in range(params.walks_per_node)
        for start in range(g.n_real)
    ]
    return WalkCorpus(tuple(walks), g.n_total, g.n_real)
