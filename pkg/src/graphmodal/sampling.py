"""Subgraph samplers that turn a host graph into classification tasks.

A sample hides the label of one node (the target, always the sampling
center) and keeps the labels of everything else.  Two samplers are
provided: ego graphs (all nodes within a hop budget) and forest fire
(stochastic breadth-wise burn).
"""

from __future__ import annotations

import hashlib
import random
from collections import deque
from dataclasses import dataclass, field

from .graph import LabeledGraph, bfs_distances, induced_subgraph


@dataclass(frozen=True)
class EgoGraph:
    hops: int = 3

    def __post_init__(self):
        if self.hops < 1:
            raise ValueError("hops must be >= 1")


@dataclass(frozen=True)
class ForestFire:
    burn_prob: float = 0.7
    max_nodes: int = 200

    def __post_init__(self):
        if not 0.0 <= self.burn_prob <= 1.0:
            raise ValueError("burn_prob must be in [0, 1]")
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be >= 1")


@dataclass(frozen=True)
class SampleSpec:
    method: EgoGraph | ForestFire
    rng_seed: int = 0
    target_policy: str = "center"

    def __post_init__(self):
        if self.target_policy != "center":
            raise ValueError(f"unsupported target_policy {self.target_policy!r}")

    @property
    def method_tag(self) -> str:
        return "ego" if isinstance(self.method, EgoGraph) else "ff"


@dataclass(frozen=True)
class SubgraphSample:
    sample_id: str
    subgraph: LabeledGraph
    target: int
    ground_truth: int
    spec: SampleSpec
    source_center: int

    def __post_init__(self):
        if self.target not in self.subgraph.nodes:
            raise ValueError("target not in subgraph")
        if self.target in self.subgraph.labels:
            raise ValueError("target label must be masked")
        unlabeled = [v for v in self.subgraph.nodes if v != self.target and v not in self.subgraph.labels]
        if unlabeled:
            raise ValueError(f"non-target nodes without labels: {sorted(unlabeled)[:5]}")


def _mask_target(g: LabeledGraph, nodes: set[int], target: int) -> LabeledGraph:
    sub = induced_subgraph(g, nodes)
    labels = {v: lab for v, lab in sub.labels.items() if v != target}
    return LabeledGraph(sub.nodes, sub.edges, labels, class_count=g.class_count)


def _check_center(g: LabeledGraph, center: int) -> int:
    if center not in g.nodes:
        raise ValueError(f"unknown node {center}")
    gt = g.label_of(center)
    if gt is None:
        raise ValueError(f"center {center} is unlabeled and cannot be a target")
    return gt


def ego_sample(
    g: LabeledGraph,
    center: int,
    k: int = 3,
    sample_id: str | None = None,
    spec: SampleSpec | None = None,
) -> SubgraphSample:
    """Induced subgraph on every node within BFS distance ``k`` of ``center``."""
    gt = _check_center(g, center)
    if k < 1:
        raise ValueError("k must be >= 1")
    nodes = set(bfs_distances(g, center, max_depth=k))
    return SubgraphSample(
        sample_id=sample_id or f"ego-{center}",
        subgraph=_mask_target(g, nodes, center),
        target=center,
        ground_truth=gt,
        spec=spec or SampleSpec(EgoGraph(hops=k)),
        source_center=center,
    )


def forest_fire_sample(
    g: LabeledGraph,
    seed_node: int,
    burn_prob: float = 0.7,
    max_nodes: int = 200,
    rng_seed: int = 0,
    sample_id: str | None = None,
    spec: SampleSpec | None = None,
) -> SubgraphSample:
    """Burn outward from ``seed_node``, keeping the burned set as the sample.

    Frontier nodes are processed breadth-first; each one tries to burn each
    of its not-yet-burned neighbors independently with ``burn_prob``.  The
    burn stops when the frontier empties or ``max_nodes`` nodes are burned,
    so the result is always connected and contains the seed.
    """
    gt = _check_center(g, seed_node)
    if not 0.0 <= burn_prob <= 1.0:
        raise ValueError("burn_prob must be in [0, 1]")
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    rng = random.Random(rng_seed)
    burned = {seed_node}
    frontier = deque([seed_node])
    while frontier and len(burned) < max_nodes:
        v = frontier.popleft()
        for w in sorted(g.neighbors(v) - burned):
            if len(burned) >= max_nodes:
                break
            if rng.random() < burn_prob:
                burned.add(w)
                frontier.append(w)
    return SubgraphSample(
        sample_id=sample_id or f"ff-{seed_node}",
        subgraph=_mask_target(g, burned, seed_node),
        target=seed_node,
        ground_truth=gt,
        spec=spec or SampleSpec(ForestFire(burn_prob, max_nodes), rng_seed=rng_seed),
        source_center=seed_node,
    )


def derive_seed(rng_seed: int, index: int) -> int:
    """Stable per-sample sub-seed, independent of draw order."""
    digest = hashlib.sha256(f"{rng_seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def draw_samples(
    g: LabeledGraph,
    n: int,
    spec: SampleSpec,
    rng_seed: int | None = None,
) -> list[SubgraphSample]:
    """Draw ``n`` samples around distinct labeled centers chosen uniformly.

    Sample ids follow ``<method>-<seed>-<index>``; forest fire burns use a
    per-index sub-seed so each sample only depends on the seed and its index.
    """
    seed = spec.rng_seed if rng_seed is None else rng_seed
    labeled = g.labeled_nodes()
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > len(labeled):
        raise ValueError(f"cannot draw {n} samples from {len(labeled)} labeled nodes")
    centers = random.Random(seed).sample(labeled, n)
    samples = []
    for i, center in enumerate(centers):
        sid = f"{spec.method_tag}-{seed}-{i}"
        if isinstance(spec.method, EgoGraph):
            samples.append(ego_sample(g, center, spec.method.hops, sample_id=sid, spec=spec))
        else:
            samples.append(
                forest_fire_sample(
                    g,
                    center,
                    spec.method.burn_prob,
                    spec.method.max_nodes,
                    rng_seed=derive_seed(seed, i),
                    sample_id=sid,
                    spec=spec,
                )
            )
    return samples
