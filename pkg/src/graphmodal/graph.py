"""Undirected labeled graphs: data model, TSV ingestion, network properties."""

from __future__ import annotations

import logging
import math
import random
from collections import Counter, deque
from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, pstdev
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

logger = logging.getLogger(__name__)

NodeId = int
ClassLabel = int
Edge = tuple[int, int]

#: diameter value for graphs that are not connected
INFINITE = math.inf

#: exact diameter computation is skipped above this node count
DIAMETER_NODE_CAP = 5000


class DatasetFormatError(ValueError):
    """Malformed dataset file; the message carries the file path and line number."""


class LabeledGraph:
    """Immutable undirected graph over non-negative integer node ids.

    Labels are a partial map from node id to a class in ``[0, class_count)``.
    Edges are canonicalized to ``(min, max)`` pairs; self-loops, duplicate
    edges and dangling endpoints are rejected at construction.
    """

    __slots__ = ("nodes", "edges", "labels", "class_count", "_adj")

    def __init__(
        self,
        nodes: Iterable[int],
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, int] | None = None,
        class_count: int | None = None,
    ):
        node_set = frozenset(int(v) for v in nodes)
        for v in node_set:
            if v < 0:
                raise ValueError(f"negative node id {v}")
        edge_set: set[Edge] = set()
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop on node {a}")
            if a not in node_set or b not in node_set:
                raise ValueError(f"edge ({a}, {b}) references a node not in the graph")
            edge_set.add((a, b) if a < b else (b, a))
        label_map: dict[int, int] = {}
        for v, lab in (labels or {}).items():
            v, lab = int(v), int(lab)
            if v not in node_set:
                raise ValueError(f"label given for unknown node {v}")
            if lab < 0:
                raise ValueError(f"negative label {lab} on node {v}")
            label_map[v] = lab
        if class_count is None:
            class_count = max(label_map.values()) + 1 if label_map else 1
        class_count = int(class_count)
        if class_count < 1:
            raise ValueError("class_count must be >= 1")
        for v, lab in label_map.items():
            if lab >= class_count:
                raise ValueError(
                    f"label {lab} on node {v} out of range for {class_count} classes"
                )
        adj: dict[int, set[int]] = {v: set() for v in node_set}
        for a, b in edge_set:
            adj[a].add(b)
            adj[b].add(a)
        self.nodes: frozenset[int] = node_set
        self.edges: frozenset[Edge] = frozenset(edge_set)
        self.labels: Mapping[int, int] = MappingProxyType(label_map)
        self.class_count: int = class_count
        self._adj: dict[int, frozenset[int]] = {v: frozenset(s) for v, s in adj.items()}

    # -- basic accessors ----------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_node(self, v: int) -> bool:
        return v in self.nodes

    def has_edge(self, a: int, b: int) -> bool:
        return (a, b) in self.edges or (b, a) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise ValueError(f"unknown node {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def label_of(self, v: int) -> int | None:
        if v not in self.nodes:
            raise ValueError(f"unknown node {v}")
        return self.labels.get(v)

    def labeled_nodes(self) -> list[int]:
        return sorted(self.labels)

    def sorted_nodes(self) -> list[int]:
        return sorted(self.nodes)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and self.edges == other.edges
            and dict(self.labels) == dict(other.labels)
            and self.class_count == other.class_count
        )

    def __hash__(self) -> int:
        return hash((self.nodes, self.edges, frozenset(self.labels.items()), self.class_count))

    def __repr__(self) -> str:
        return (
            f"LabeledGraph(nodes={self.node_count}, edges={self.edge_count}, "
            f"labeled={len(self.labels)}, classes={self.class_count})"
        )


@dataclass(frozen=True)
class GraphProperties:
    node_count: int
    edge_count: int
    density: float
    average_degree: float
    clustering_coefficient: float
    diameter: float | int | None  # int exact, INFINITE disconnected, None unknown
    component_count: int
    degree_histogram: Mapping[int, int]


@dataclass(frozen=True)
class KHopStats:
    k: int
    centers: int
    mean_nodes: float
    std_nodes: float
    mean_edges: float
    std_edges: float


# -- traversal ---------------------------------------------------------------


def bfs_distances(g: LabeledGraph, source: int, max_depth: int | None = None) -> dict[int, int]:
    """Hop distance from ``source`` to every node reachable within ``max_depth``."""
    if source not in g.nodes:
        raise ValueError(f"unknown node {source}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if max_depth is not None and d >= max_depth:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = d + 1
                queue.append(w)
    return dist


def connected_components(g: LabeledGraph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest node id."""
    seen: set[int] = set()
    comps = []
    for v in g.sorted_nodes():
        if v in seen:
            continue
        comp = frozenset(bfs_distances(g, v))
        seen |= comp
        comps.append(comp)
    return comps


def induced_subgraph(g: LabeledGraph, keep: Iterable[int]) -> LabeledGraph:
    """Subgraph on ``keep``, retaining labels and the parent class_count."""
    keep_set = frozenset(int(v) for v in keep)
    missing = keep_set - g.nodes
    if missing:
        raise ValueError(f"nodes not in graph: {sorted(missing)[:5]}")
    edges = [(a, b) for a, b in g.edges if a in keep_set and b in keep_set]
    labels = {v: g.labels[v] for v in keep_set if v in g.labels}
    return LabeledGraph(keep_set, edges, labels, class_count=g.class_count)


# -- properties ---------------------------------------------------------------


def _local_clustering(g: LabeledGraph, v: int) -> float:
    nb = g.neighbors(v)
    d = len(nb)
    if d < 2:
        return 0.0
    # each edge inside the neighborhood is seen from both endpoints
    links = sum(len(g.neighbors(u) & nb) for u in nb) // 2
    return 2.0 * links / (d * (d - 1))


def compute_properties(g: LabeledGraph, diameter_cap: int = DIAMETER_NODE_CAP) -> GraphProperties:
    """Global network statistics.

    The diameter is ``INFINITE`` unless the graph has exactly one connected
    component, and ``None`` (unknown) when the exact all-pairs computation
    would exceed ``diameter_cap`` nodes.
    """
    n, e = g.node_count, g.edge_count
    density = 2.0 * e / (n * (n - 1)) if n > 1 else 0.0
    average_degree = 2.0 * e / n if n > 0 else 0.0
    clustering = fmean(_local_clustering(g, v) for v in g.nodes) if n > 0 else 0.0
    comps = connected_components(g)
    if len(comps) != 1:
        diameter: float | int | None = INFINITE
    elif n > diameter_cap:
        diameter = None
    else:
        diameter = max(max(bfs_distances(g, v).values()) for v in g.nodes)
    histogram = Counter(g.degree(v) for v in g.nodes)
    return GraphProperties(
        node_count=n,
        edge_count=e,
        density=density,
        average_degree=average_degree,
        clustering_coefficient=clustering,
        diameter=diameter,
        component_count=len(comps),
        degree_histogram=MappingProxyType(dict(histogram)),
    )


def k_hop_stats(
    g: LabeledGraph,
    k: int,
    sample_size: int | None = None,
    rng_seed: int = 0,
) -> KHopStats:
    """Mean and std of k-hop neighborhood sizes over sampled centers.

    ``sample_size=None`` uses every node as a center; otherwise that many
    centers are drawn uniformly without replacement.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    centers = g.sorted_nodes()
    if not centers:
        raise ValueError("graph has no nodes")
    if sample_size is not None:
        if sample_size < 1 or sample_size > len(centers):
            raise ValueError(f"sample_size {sample_size} out of range 1..{len(centers)}")
        centers = sorted(random.Random(rng_seed).sample(centers, sample_size))
    node_counts = []
    edge_counts = []
    for c in centers:
        reach = bfs_distances(g, c, max_depth=k)
        node_counts.append(len(reach))
        edge_counts.append(sum(len(g.neighbors(v) & reach.keys()) for v in reach) // 2)
    return KHopStats(
        k=k,
        centers=len(centers),
        mean_nodes=fmean(node_counts),
        std_nodes=pstdev(node_counts),
        mean_edges=fmean(edge_counts),
        std_edges=pstdev(edge_counts),
    )


# -- TSV ingestion -------------------------------------------------------------


def _data_lines(path: Path) -> Iterator[tuple[int, str]]:
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def load_dataset(
    nodes_path: str | Path,
    edges_path: str | Path,
    class_count: int | None = None,
) -> LabeledGraph:
    """Read a graph from two TSV files.

    The node file carries one ``id<TAB>label`` entry per line (a bare ``id``
    marks an unlabeled node); the edge file carries ``src<TAB>dst`` pairs.
    Blank lines and ``#`` comments are skipped in both files.  Duplicate and
    reversed edge lines are deduplicated; self-loop lines are dropped with a
    warning count.
    """
    nodes_path, edges_path = Path(nodes_path), Path(edges_path)
    labels: dict[int, int] = {}
    nodes: set[int] = set()
    for lineno, line in _data_lines(nodes_path):
        parts = line.split("\t")
        try:
            if len(parts) == 1:
                v = int(parts[0])
                lab = None
            elif len(parts) == 2:
                v, lab = int(parts[0]), int(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise DatasetFormatError(f"{nodes_path}:{lineno}: bad node line {line!r}") from None
        if v in nodes and labels.get(v) != lab:
            raise DatasetFormatError(f"{nodes_path}:{lineno}: conflicting label for node {v}")
        nodes.add(v)
        if lab is not None:
            if class_count is not None and not 0 <= lab < class_count:
                raise DatasetFormatError(
                    f"{nodes_path}:{lineno}: label {lab} out of range for {class_count} classes"
                )
            labels[v] = lab
    edges: set[Edge] = set()
    self_loops = 0
    for lineno, line in _data_lines(edges_path):
        parts = line.split("\t")
        try:
            if len(parts) != 2:
                raise ValueError
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise DatasetFormatError(f"{edges_path}:{lineno}: bad edge line {line!r}") from None
        if a == b:
            self_loops += 1
            continue
        if a not in nodes or b not in nodes:
            raise DatasetFormatError(f"{edges_path}:{lineno}: edge references unknown node")
        edges.add((a, b) if a < b else (b, a))
    if self_loops:
        logger.warning("%s: dropped %d self-loop edge line(s)", edges_path, self_loops)
    return LabeledGraph(nodes, edges, labels, class_count=class_count)


def write_dataset(g: LabeledGraph, nodes_path: str | Path, edges_path: str | Path) -> None:
    """Write the canonical TSV form read back by :func:`load_dataset`."""
    nodes_path, edges_path = Path(nodes_path), Path(edges_path)
    with nodes_path.open("w", encoding="utf-8") as fh:
        for v in g.sorted_nodes():
            lab = g.labels.get(v)
            fh.write(f"{v}\n" if lab is None else f"{v}\t{lab}\n")
    with edges_path.open("w", encoding="utf-8") as fh:
        for a, b in g.sorted_edges():
            fh.write(f"{a}\t{b}\n")
