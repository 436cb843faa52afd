from itertools import combinations

import pytest
from hypothesis import given, settings

from graphmodal.graph import LabeledGraph
from graphmodal.motifs import (
    enumerate_maximal_cliques,
    enumerate_stars,
    enumerate_triangles,
    motif_summary,
    MotifSummary,
)
from helpers import as_sample, graphs, motif_sample, samples


def complete_graph(n, label=0):
    nodes = list(range(n))
    return LabeledGraph(nodes, combinations(nodes, 2), {v: label for v in nodes})


def star_graph(leaves):
    nodes = list(range(leaves + 1))
    return LabeledGraph(nodes, [(0, v) for v in nodes[1:]], {v: 0 for v in nodes})


# -- closed forms ------------------------------------------------------------------


def test_k4_motifs():
    g = complete_graph(4)
    assert enumerate_triangles(g) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert enumerate_stars(g) == []
    assert enumerate_maximal_cliques(g) == [(0, 1, 2, 3)]


def test_k5_triangle_count_is_binomial():
    g = complete_graph(5)
    assert len(enumerate_triangles(g)) == 10
    assert enumerate_maximal_cliques(g) == [(0, 1, 2, 3, 4)]
    # every size-4 subset is complete but extendable, hence not maximal
    assert enumerate_maximal_cliques(g, min_size=4) == [(0, 1, 2, 3, 4)]


def test_star_graph_motifs():
    g = star_graph(5)
    assert enumerate_triangles(g) == []
    assert enumerate_stars(g) == [(0, (1, 2, 3, 4, 5))]
    assert enumerate_maximal_cliques(g) == []


def test_star_needs_independent_neighborhood():
    # center 0 has four neighbors but two of them are adjacent
    g = LabeledGraph(range(5), [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)], {v: 0 for v in range(5)})
    assert enumerate_stars(g) == []
    # the triangle edge also disqualifies nodes 1 and 2 at min_leaves=2
    assert enumerate_stars(g, min_leaves=2) == []
    # leaves themselves are not star centers (degree 1)
    assert all(c == 0 for c, _ in enumerate_stars(star_graph(4)))


def test_min_leaves_threshold():
    g = star_graph(2)  # path of length 2
    assert enumerate_stars(g, min_leaves=3) == []
    assert enumerate_stars(g, min_leaves=2) == [(0, (1, 2))]
    with pytest.raises(ValueError):
        enumerate_stars(g, min_leaves=1)


def test_two_k4_sharing_a_node():
    blocks = [list(range(4)), [3, 4, 5, 6]]
    edges = [e for b in blocks for e in combinations(b, 2)]
    g = LabeledGraph(range(7), edges, {v: 0 for v in range(7)})
    assert enumerate_maximal_cliques(g) == [(0, 1, 2, 3), (3, 4, 5, 6)]
    assert len(enumerate_triangles(g)) == 8


def test_clique_min_size_validation():
    with pytest.raises(ValueError):
        enumerate_maximal_cliques(complete_graph(4), min_size=2)


# -- brute-force cross-checks -------------------------------------------------------


@settings(deadline=None, max_examples=80)
@given(graphs(max_nodes=12))
def test_triangles_match_triple_enumeration(g):
    from oracles import bf_triangles

    assert enumerate_triangles(g) == bf_triangles(g)


@settings(deadline=None, max_examples=80)
@given(graphs(max_nodes=12))
def test_stars_match_brute_force(g):
    from oracles import bf_stars

    assert enumerate_stars(g) == bf_stars(g)


@settings(deadline=None, max_examples=80)
@given(graphs(max_nodes=12))
def test_cliques_match_bitmask_scan(g):
    from oracles import bf_maximal_cliques

    assert enumerate_maximal_cliques(g) == bf_maximal_cliques(g)


@settings(deadline=None, max_examples=60)
@given(samples(max_nodes=12))
def test_summary_matches_brute_force(sample):
    from oracles import bf_motif_counts

    got = motif_summary(sample)
    want = bf_motif_counts(sample)
    assert got.triangle_count == want["triangle_count"]
    assert got.star_count == want["star_count"]
    assert got.clique_count == want["clique_count"]
    assert got.triangles_attached == want["triangles_attached"]
    assert got.stars_attached == want["stars_attached"]
    assert got.cliques_containing == want["cliques_containing"]
    assert got.cliques_attached == want["cliques_attached"]
    assert got.total_motifs == want["total_motifs"]


# -- target attachment ---------------------------------------------------------------


def test_fixture_sample_attachments():
    s = motif_sample()
    summary = motif_summary(s)
    assert summary.triangle_count == 2
    assert summary.triangles_attached == ((429, 1531, 1893), (1531, 1893, 2034))
    assert summary.star_count == 0 and summary.clique_count == 0
    assert summary.total_motifs == 2


def test_clique_attachment_split():
    # K4 on 0..3, target 4 hangs off node 3; a second K4 on 4..7 contains it
    edges = list(combinations(range(4), 2)) + [(3, 4)] + list(combinations(range(4, 8), 2))
    g = LabeledGraph(range(8), edges, {v: v % 4 for v in range(8)}, class_count=4)
    s = as_sample(g, 4)
    summary = motif_summary(s)
    assert summary.cliques_containing == ((4, 5, 6, 7),)
    assert summary.cliques_attached == ((0, 1, 2, 3),)


def test_star_attached_as_leaf_and_center():
    g = star_graph(4)
    as_center = motif_summary(as_sample(g, 0))
    assert as_center.stars_attached == ((0, (1, 2, 3, 4)),)
    as_leaf = motif_summary(as_sample(g, 2))
    assert as_leaf.stars_attached == ((0, (1, 2, 3, 4)),)


def test_summary_total_validated():
    with pytest.raises(ValueError):
        MotifSummary(1, 0, 0, (), (), (), (), total_motifs=5)
