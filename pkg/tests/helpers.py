"""Shared test builders: seeded random graphs, fixture samples, fake clock."""

from __future__ import annotations

import random
import threading
from itertools import combinations

from hypothesis import strategies as st

from graphmodal.graph import LabeledGraph
from graphmodal.sampling import EgoGraph, SampleSpec, SubgraphSample


def random_graph(
    seed: int,
    max_nodes: int = 20,
    edge_prob: float | None = None,
    class_count: int | None = None,
) -> LabeledGraph:
    """Erdos-Renyi-style graph with every node labeled."""
    rng = random.Random(seed)
    n = rng.randint(1, max_nodes)
    p = rng.uniform(0.05, 0.5) if edge_prob is None else edge_prob
    nodes = list(range(n))
    edges = [(a, b) for a, b in combinations(nodes, 2) if rng.random() < p]
    classes = class_count or rng.randint(1, 8)
    labels = {v: rng.randrange(classes) for v in nodes}
    return LabeledGraph(nodes, edges, labels, class_count=classes)


def as_sample(g: LabeledGraph, target: int, sample_id: str = "s-0") -> SubgraphSample:
    """Wrap a fully labeled graph as a sample with ``target`` masked."""
    labels = {v: lab for v, lab in g.labels.items() if v != target}
    masked = LabeledGraph(g.nodes, g.edges, labels, class_count=g.class_count)
    return SubgraphSample(
        sample_id=sample_id,
        subgraph=masked,
        target=target,
        ground_truth=g.labels[target],
        spec=SampleSpec(EgoGraph(hops=1)),
        source_center=target,
    )


def triangle_sample() -> SubgraphSample:
    """Three mutually connected nodes; the target is 2340."""
    g = LabeledGraph(
        [1558, 2339, 2340],
        [(1558, 2339), (1558, 2340), (2339, 2340)],
        {1558: 3, 2339: 3, 2340: 3},
        class_count=7,
    )
    return as_sample(g, 2340, sample_id="tri-0")


def motif_sample() -> SubgraphSample:
    """Two triangles sharing an edge at the target plus one pendant node.

    Triangles: (429, 1531, 1893) and (1531, 1893, 2034), both containing the
    target 1893.  No stars (every candidate center has adjacent neighbors)
    and no cliques of size four.
    """
    g = LabeledGraph(
        [429, 1531, 1889, 1893, 2034],
        [(1531, 1893), (1531, 2034), (1893, 2034), (429, 1531), (429, 1893), (1889, 1893)],
        {429: 2, 1531: 5, 1889: 4, 1893: 4, 2034: 0},
        class_count=7,
    )
    return as_sample(g, 1893, sample_id="motif-0")


def ring_communities(cluster_count: int = 3, cluster_size: int = 100) -> LabeledGraph:
    """Disjoint rings, one label per ring: perfectly homophilous neighborhoods."""
    nodes = list(range(cluster_count * cluster_size))
    edges = []
    labels = {}
    for c in range(cluster_count):
        ring = list(range(c * cluster_size, (c + 1) * cluster_size))
        for i, v in enumerate(ring):
            labels[v] = c
            edges.append((v, ring[(i + 1) % cluster_size]))
    return LabeledGraph(nodes, edges, labels, class_count=cluster_count)


def k4_blocks(block_count: int = 75) -> LabeledGraph:
    """Disjoint K4s labeled 0..3: every node sees three distinct labels."""
    nodes = list(range(block_count * 4))
    edges = []
    labels = {}
    for b in range(block_count):
        block = list(range(b * 4, (b + 1) * 4))
        for i, v in enumerate(block):
            labels[v] = i
        edges.extend(combinations(block, 2))
    return LabeledGraph(nodes, edges, labels, class_count=4)


class FakeClock:
    """Manual clock for throttle and backoff tests; sleeping advances time."""

    def __init__(self, start: float = 0.0):
        self._t = start
        self.sleeps: list[float] = []
        self._lock = threading.Lock()

    def now(self) -> float:
        with self._lock:
            return self._t

    def sleep(self, seconds: float) -> None:
        with self._lock:
            self.sleeps.append(seconds)
            self._t += max(seconds, 0.0)

    def advance(self, seconds: float) -> None:
        with self._lock:
            self._t += seconds


@st.composite
def graphs(draw, max_nodes: int = 16) -> LabeledGraph:
    return random_graph(draw(st.integers(0, 10**9)), max_nodes=max_nodes)


@st.composite
def samples(draw, max_nodes: int = 16) -> SubgraphSample:
    g = draw(graphs(max_nodes=max_nodes))
    target = draw(st.sampled_from(g.sorted_nodes()))
    return as_sample(g, target)
