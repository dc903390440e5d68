"""Attributed undirected graphs: loading, validation, and virtual-node extension.

A graph is a set of named nodes, undirected edges, and a per-node attribute
mapping.  Attribute values are either nominal (strings) or quantitative
(numbers); quantitative attributes are discretized with Chi-Merge before the
graph is extended.  Extension adds one virtual node per distinct
(attribute, value) pair and a virtual edge for every node that carries that
value, so that walks can travel through shared attribute values.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import chi2


class GraphFormatError(ValueError):
    """A graph source failed parsing or validation.

    ``where`` locates the offending element: a JSON path fragment such as
    ``edges[3]`` or a 1-based line number for edge-list text.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{message} (at {where})" if where else message)


NOMINAL = "nominal"
QUANTITATIVE = "quantitative"


@dataclass(frozen=True)
class AttributedGraph:
    """Undirected graph with string node ids, attributes, and optional labels.

    Nodes are addressed internally by dense 0-based index; ``names[i]`` is the
    external id of node ``i``.  Edges are stored as (u, v) index pairs with
    u < v.  ``attributes[i]`` maps attribute name to a string (nominal) or
    float (quantitative) value; missing attributes are simply absent from the
    mapping.  Immutable after construction.
    """

    names: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    attributes: tuple[Mapping[str, object], ...]
    node_labels: tuple[str | None, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except AttributeError:
            object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})
            return self._index[name]

    @property
    def labels(self) -> tuple[str, ...] | None:
        """Per-node class labels, or None unless every node carries one."""
        if self.n and all(lb is not None for lb in self.node_labels):
            return self.node_labels  # type: ignore[return-value]
        return None

    def schema(self) -> dict[str, str]:
        """Attribute name -> NOMINAL | QUANTITATIVE over the whole graph."""
        kinds: dict[str, str] = {}
        for attrs in self.attributes:
            for name, value in attrs.items():
                kind = NOMINAL if isinstance(value, str) else QUANTITATIVE
                if kinds.setdefault(name, kind) != kind:
                    raise GraphFormatError(
                        f"attribute {name!r} mixes nominal and quantitative values"
                    )
        return kinds

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def to_json_dict(self) -> dict:
        nodes = []
        for i, name in enumerate(self.names):
            entry: dict[str, object] = {"id": name}
            if self.node_labels[i] is not None:
                entry["label"] = self.node_labels[i]
            if self.attributes[i]:
                entry["attrs"] = dict(self.attributes[i])
            nodes.append(entry)
        return {
            "nodes": nodes,
            "edges": [[self.names[u], self.names[v]] for u, v in self.edges],
        }


@dataclass(frozen=True)
class AttributeBinning:
    """Discretization of one quantitative attribute.

    ``boundaries`` are the interior cut points between consecutive bins
    (len = bins - 1, strictly increasing); ``representatives[i]`` is the
    arithmetic mean of the values that fell into bin i.
    """

    attribute: str
    boundaries: tuple[float, ...]
    representatives: tuple[float, ...]
    spans: tuple[tuple[float, float], ...]  # observed (min, max) per bin

    def bin_of(self, value: float) -> int:
        return bisect.bisect_right(self.boundaries, value)

    def represent(self, value: float) -> float:
        return self.representatives[self.bin_of(value)]


@dataclass(frozen=True)
class ExtendedGraph:
    """Graph plus one virtual node per distinct (attribute, value) pair.

    Real nodes keep indices 0..n-1; virtual nodes occupy n..n+nv-1 and never
    appear in any exported artifact.  ``neighbors[i]`` is the sorted neighbor
    array of node i over the union edge set.
    """

    base: AttributedGraph
    virtual_keys: tuple[tuple[str, str], ...]  # (attribute, value repr)
    virtual_edges: tuple[tuple[int, int], ...]  # (real index, virtual index)
    neighbors: tuple[np.ndarray, ...] = field(repr=False)
    edge_set: frozenset[tuple[int, int]] = field(repr=False)

    @property
    def n_real(self) -> int:
        return self.base.n

    @property
    def n_total(self) -> int:
        return self.base.n + len(self.virtual_keys)

    def is_virtual(self, i: int) -> bool:
        return i >= self.base.n

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set if u < v else (v, u) in self.edge_set


# ---------------------------------------------------------------------------
# Loading


def load_graph(source: str) -> AttributedGraph:
    """Parse graph file content, JSON or whitespace edge-list, and validate.

    JSON shape: ``{"nodes": [{"id", "label"?, "attrs"?}], "edges": [[a, b]]}``.
    Edge-list text: one ``idA idB`` pair per line; nodes are implicit and
    carry no attributes.
    """
    stripped = source.lstrip()
    if stripped.startswith("{"):
        return _load_json(source)
    return _load_edgelist(source)


def load_graph_file(path) -> AttributedGraph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


def _load_json(source: str) -> AttributedGraph:
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from exc
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise GraphFormatError("expected object with 'nodes' and 'edges'")

    names: list[str] = []
    labels: list[str | None] = []
    attrs: list[dict[str, object]] = []
    index: dict[str, int] = {}
    for pos, node in enumerate(doc["nodes"]):
        where = f"nodes[{pos}]"
        if not isinstance(node, dict) or "id" not in node:
            raise GraphFormatError("node entry must be an object with 'id'", where)
        name = node["id"]
        if not isinstance(name, str):
            raise GraphFormatError("node id must be a string", where)
        if name in index:
            raise GraphFormatError(f"duplicate node id {name!r}", where)
        label = node.get("label")
        if label is not None and not isinstance(label, str):
            raise GraphFormatError("label must be a string", where)
        node_attrs: dict[str, object] = {}
        for key, value in (node.get("attrs") or {}).items():
            if isinstance(value, bool) or not isinstance(value, (str, int, float)):
                raise GraphFormatError(
                    f"attribute {key!r} must be a string or number", where
                )
            node_attrs[key] = value if isinstance(value, str) else float(value)
        index[name] = len(names)
        names.append(name)
        labels.append(label)
        attrs.append(node_attrs)

    edges = _validate_edges(
        ((pair, f"edges[{pos}]") for pos, pair in enumerate(doc["edges"])), index
    )
    g = AttributedGraph(tuple(names), edges, tuple(attrs), tuple(labels))
    g.schema()  # reject mixed-type attributes at load time
    return g


def _load_edgelist(source: str) -> AttributedGraph:
    names: list[str] = []
    index: dict[str, int] = {}
    raw_edges: list[tuple[list[str], str]] = []
    for lineno, line in enumerate(source.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 2:
            raise GraphFormatError("expected two ids per line", f"line {lineno}")
        for name in parts:
            if name not in index:
                index[name] = len(names)
                names.append(name)
        raw_edges.append((parts, f"line {lineno}"))
    edges = _validate_edges(raw_edges, index)
    n = len(names)
    return AttributedGraph(tuple(names), edges, ({},) * n, (None,) * n)


def _validate_edges(pairs, index: dict[str, int]) -> tuple[tuple[int, int], ...]:
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for pair, where in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise GraphFormatError("edge must be a pair of node ids", where)
        a, b = pair
        if a not in index or b not in index:
            missing = a if a not in index else b
            raise GraphFormatError(f"edge references unknown node {missing!r}", where)
        u, v = index[a], index[b]
        if u == v:
            raise GraphFormatError(f"self-loop on node {a!r}", where)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({a!r}, {b!r})", where)
        seen.add(key)
        edges.append(key)
    return tuple(edges)


# ---------------------------------------------------------------------------
# Chi-Merge discretization


def discretize_attribute(
    attribute: str,
    values: Sequence[tuple[int, float]],
    max_bins: int = 8,
    confidence: float = 0.95,
    labels: Mapping[int, str] | None = None,
) -> AttributeBinning:
    """Discretize ``values`` (node, value pairs) into at most ``max_bins`` bins.

    Bottom-up Chi-Merge: start with one interval per distinct value and
    repeatedly merge the adjacent pair with the lowest chi-square statistic
    against the node classes, while the lowest statistic stays under the
    ``confidence`` chi-square quantile or the interval count exceeds
    ``max_bins``.  Without labels, quartile membership of the attribute itself
    serves as the class.  Each bin is represented by the mean of its values.
    """
    if not values:
        raise ValueError("values must be non-empty")
    if max_bins < 1:
        raise ValueError("max_bins must be >= 1")

    vals = np.array([v for _, v in values], dtype=float)
    if labels is not None:
        classes = [labels[node] for node, _ in values]
    else:
        quartiles = np.quantile(vals, [0.25, 0.5, 0.75])
        classes = [f"q{int(np.searchsorted(quartiles, v, side='right'))}" for v in vals]
    class_ids = {c: i for i, c in enumerate(sorted(set(classes)))}
    n_classes = len(class_ids)

    order = np.argsort(vals, kind="stable")
    intervals: list[list[float]] = []  # distinct values, ascending
    counts: list[np.ndarray] = []  # class histogram per interval
    sums: list[float] = []
    sizes: list[int] = []
    for i in order:
        v = float(vals[i])
        c = class_ids[classes[i]]
        if intervals and intervals[-1][-1] == v:
            counts[-1][c] += 1
            sums[-1] += v
            sizes[-1] += 1
        else:
            intervals.append([v])
            counts.append(np.bincount([c], minlength=n_classes).astype(float))
            sums.append(v)
            sizes.append(1)

    threshold = chi2.ppf(confidence, df=max(n_classes - 1, 1))
    while len(intervals) > 1:
        stats = [
            _chi_square_pair(counts[i], counts[i + 1]) for i in range(len(intervals) - 1)
        ]
        best = int(np.argmin(stats))
        if stats[best] >= threshold and len(intervals) <= max_bins:
            break
        intervals[best] = intervals[best] + intervals[best + 1]
        counts[best] = counts[best] + counts[best + 1]
        sums[best] += sums[best + 1]
        sizes[best] += sizes[best + 1]
        for seq in (intervals, counts, sums, sizes):
            del seq[best + 1]

    spans = tuple((iv[0], iv[-1]) for iv in intervals)
    reps = tuple(s / n for s, n in zip(sums, sizes))
    boundaries = tuple(
        (spans[i][1] + spans[i + 1][0]) / 2.0 for i in range(len(spans) - 1)
    )
    return AttributeBinning(attribute, boundaries, reps, spans)


def _chi_square_pair(row_a: np.ndarray, row_b: np.ndarray) -> float:
    """Chi-square statistic of the 2 x C contingency table (row_a, row_b)."""
    table = np.stack([row_a, row_b])
    total = table.sum()
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / total
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(expected > 0, (table - expected) ** 2 / expected, 0.0)
    return float(terms.sum())


# ---------------------------------------------------------------------------
# Extension


def extend_graph(
    g: AttributedGraph, binnings: Sequence[AttributeBinning] = ()
) -> ExtendedGraph:
    """Attach virtual attribute nodes and the edges that point at them.

    Every distinct nominal value and every bin representative becomes one
    virtual node keyed by (attribute, value); each node carrying that value
    contributes one virtual edge.  Nodes missing an attribute contribute
    nothing.  The base graph is untouched.
    """
    schema = g.schema()
    by_attr = {b.attribute: b for b in binnings}
    for name, kind in schema.items():
        if kind == QUANTITATIVE and name not in by_attr:
            raise ValueError(f"no binning supplied for quantitative attribute {name!r}")

    keys: list[tuple[str, str]] = []
    key_index: dict[tuple[str, str], int] = {}
    incidences: list[tuple[int, tuple[str, str]]] = []
    for i, attrs in enumerate(g.attributes):
        for name in sorted(attrs):
            value = attrs[name]
            if isinstance(value, str):
                key = (name, value)
            else:
                key = (name, repr(by_attr[name].represent(float(value))))
            if key not in key_index:
                key_index[key] = len(keys)
                keys.append(key)
            incidences.append((i, key))

    n = g.n
    virtual_edges = tuple(
        (node, n + key_index[key]) for node, key in incidences
    )
    adjacency: list[list[int]] = [[] for _ in range(n + len(keys))]
    edge_set = set()
    for u, v in g.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
        edge_set.add((u, v))
    for u, v in virtual_edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
        edge_set.add((u, v))
    neighbors = tuple(np.array(sorted(nbrs), dtype=np.int64) for nbrs in adjacency)
    return ExtendedGraph(g, tuple(keys), virtual_edges, neighbors, frozenset(edge_set))


def binnings_for(
    g: AttributedGraph, max_bins: int = 8, confidence: float = 0.95
) -> list[AttributeBinning]:
    """Chi-Merge binnings for every quantitative attribute of ``g``."""
    label_map = None
    if g.labels is not None:
        label_map = {i: lb for i, lb in enumerate(g.labels)}
    out = []
    for name, kind in sorted(g.schema().items()):
        if kind != QUANTITATIVE:
            continue
        values = [
            (i, float(attrs[name]))
            for i, attrs in enumerate(g.attributes)
            if name in attrs
        ]
        out.append(
            discretize_attribute(name, values, max_bins, confidence, labels=label_map)
        )
    return out
