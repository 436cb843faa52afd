from statistics import fmean

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphmodal.graph import LabeledGraph, connected_components
from graphmodal.sampling import (
    EgoGraph,
    ForestFire,
    SampleSpec,
    SubgraphSample,
    derive_seed,
    draw_samples,
    ego_sample,
    forest_fire_sample,
)
from helpers import graphs, random_graph
from oracles import bf_ego_nodes


def line_graph(n=8):
    nodes = list(range(n))
    return LabeledGraph(nodes, [(i, i + 1) for i in range(n - 1)], {v: 0 for v in nodes})


# -- spec objects -----------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        EgoGraph(hops=0)
    with pytest.raises(ValueError):
        ForestFire(burn_prob=1.5)
    with pytest.raises(ValueError):
        ForestFire(max_nodes=0)
    with pytest.raises(ValueError):
        SampleSpec(EgoGraph(), target_policy="random")


def test_method_tags():
    assert SampleSpec(EgoGraph()).method_tag == "ego"
    assert SampleSpec(ForestFire()).method_tag == "ff"


def test_sample_invariants_enforced():
    g = LabeledGraph([0, 1], [(0, 1)], {0: 0, 1: 1})
    spec = SampleSpec(EgoGraph(1))
    with pytest.raises(ValueError, match="masked"):
        SubgraphSample("s", g, target=0, ground_truth=0, spec=spec, source_center=0)
    masked = LabeledGraph([0, 1], [(0, 1)], {1: 1}, class_count=2)
    with pytest.raises(ValueError, match="not in subgraph"):
        SubgraphSample("s", masked, target=9, ground_truth=0, spec=spec, source_center=9)
    holey = LabeledGraph([0, 1, 2], [(0, 1), (1, 2)], {1: 1}, class_count=2)
    with pytest.raises(ValueError, match="without labels"):
        SubgraphSample("s", holey, target=0, ground_truth=0, spec=spec, source_center=0)


# -- ego sampling -----------------------------------------------------------------


def test_ego_line_graph_exact():
    g = line_graph(8)
    s = ego_sample(g, 3, k=2)
    assert s.subgraph.nodes == frozenset({1, 2, 3, 4, 5})
    assert s.target == 3 and s.ground_truth == 0
    assert s.subgraph.label_of(3) is None


def test_ego_rejects_unlabeled_center():
    g = LabeledGraph([0, 1], [(0, 1)], {1: 0})
    with pytest.raises(ValueError, match="unlabeled"):
        ego_sample(g, 0, k=1)
    with pytest.raises(ValueError, match="unknown node"):
        ego_sample(g, 7, k=1)
    with pytest.raises(ValueError, match="k must be"):
        ego_sample(g, 1, k=0)


@settings(deadline=None)
@given(graphs(max_nodes=24), st.integers(1, 4), st.integers(0, 10**6))
def test_ego_matches_frontier_bfs(g, k, pick):
    center = g.sorted_nodes()[pick % g.node_count]
    s = ego_sample(g, center, k=k)
    assert set(s.subgraph.nodes) == bf_ego_nodes(g, center, k)


@settings(deadline=None, max_examples=50)
@given(graphs(max_nodes=20), st.integers(0, 10**6))
def test_ego_is_induced_and_masked(g, pick):
    center = g.sorted_nodes()[pick % g.node_count]
    s = ego_sample(g, center, k=2)
    sub = s.subgraph
    # every edge of the host between kept nodes must survive
    kept = sub.nodes
    expected = {(a, b) for a, b in g.edges if a in kept and b in kept}
    assert sub.edges == frozenset(expected)
    assert s.target not in sub.labels
    assert set(sub.labels) == kept - {s.target}
    assert sub.class_count == g.class_count


# -- forest fire ------------------------------------------------------------------


def test_forest_fire_p0_is_just_the_seed():
    g = random_graph(3, max_nodes=30, edge_prob=0.3)
    s = forest_fire_sample(g, g.sorted_nodes()[0], burn_prob=0.0)
    assert s.subgraph.nodes == frozenset({g.sorted_nodes()[0]})


def test_forest_fire_p1_burns_component_up_to_cap():
    g = line_graph(10)
    s = forest_fire_sample(g, 0, burn_prob=1.0, max_nodes=100)
    assert s.subgraph.nodes == g.nodes
    capped = forest_fire_sample(g, 0, burn_prob=1.0, max_nodes=4)
    assert capped.subgraph.node_count == 4
    assert 0 in capped.subgraph.nodes


def test_forest_fire_deterministic_per_seed():
    g = random_graph(4, max_nodes=40, edge_prob=0.15)
    c = g.sorted_nodes()[0]
    a = forest_fire_sample(g, c, rng_seed=11)
    b = forest_fire_sample(g, c, rng_seed=11)
    assert a.subgraph == b.subgraph


@settings(deadline=None, max_examples=50)
@given(graphs(max_nodes=24), st.integers(0, 10**6), st.integers(0, 10**6))
def test_forest_fire_connected_and_contains_seed(g, pick, seed):
    center = g.sorted_nodes()[pick % g.node_count]
    s = forest_fire_sample(g, center, burn_prob=0.6, max_nodes=10, rng_seed=seed)
    sub = s.subgraph
    assert center in sub.nodes
    assert sub.node_count <= 10
    assert len(connected_components(sub)) == 1


def test_forest_fire_mean_size_monotone_in_burn_prob():
    import random
    from itertools import combinations

    rng = random.Random(8)
    nodes = list(range(60))
    edges = [(a, b) for a, b in combinations(nodes, 2) if rng.random() < 0.08]
    g = LabeledGraph(nodes, edges, {v: 0 for v in nodes})
    c = max(g.sorted_nodes(), key=g.degree)
    means = []
    for p in (0.2, 0.5, 0.8):
        sizes = [
            forest_fire_sample(g, c, burn_prob=p, max_nodes=40, rng_seed=t).subgraph.node_count
            for t in range(300)
        ]
        means.append(fmean(sizes))
    assert means[0] < means[1] < means[2]


# -- batch draws -------------------------------------------------------------------


def test_draw_samples_ids_and_determinism():
    g = random_graph(5, max_nodes=30, edge_prob=0.2)
    spec = SampleSpec(EgoGraph(2), rng_seed=42)
    first = draw_samples(g, 5, spec)
    second = draw_samples(g, 5, spec)
    assert [s.sample_id for s in first] == [f"ego-42-{i}" for i in range(5)]
    assert [(s.source_center, s.subgraph) for s in first] == [
        (s.source_center, s.subgraph) for s in second
    ]
    assert len({s.source_center for s in first}) == 5


def test_draw_samples_seed_override():
    g = random_graph(5, max_nodes=30, edge_prob=0.2)
    spec = SampleSpec(ForestFire(0.7, 12), rng_seed=1)
    only_seed = draw_samples(g, 4, spec, rng_seed=99)
    assert [s.sample_id for s in only_seed] == [f"ff-99-{i}" for i in range(4)]


def test_draw_samples_validation():
    g = LabeledGraph([0, 1], labels={0: 0})
    spec = SampleSpec(EgoGraph(1))
    with pytest.raises(ValueError, match="cannot draw"):
        draw_samples(g, 2, spec)
    with pytest.raises(ValueError, match="n must be"):
        draw_samples(g, 0, spec)


def test_derive_seed_is_stable_and_spread():
    assert derive_seed(7, 0) == derive_seed(7, 0)
    seen = {derive_seed(7, i) for i in range(100)}
    assert len(seen) == 100
    assert derive_seed(7, 1) != derive_seed(8, 1)
