"""Motif enumeration: triangles, independent-neighborhood stars, maximal cliques.

All enumerators return sorted, canonical structures so downstream encoders
are deterministic.  Stars and cliques are kept disjoint from triangles by
their defaults: a star center must have a fully independent neighborhood,
and cliques only count from size 4 up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import LabeledGraph
from .sampling import SubgraphSample

Triangle = tuple[int, int, int]
Star = tuple[int, tuple[int, ...]]  # (center, leaves)
Clique = tuple[int, ...]

DEFAULT_MIN_LEAVES = 3
DEFAULT_MIN_CLIQUE = 4


@dataclass(frozen=True)
class MotifSummary:
    triangle_count: int
    star_count: int
    clique_count: int
    triangles_attached: tuple[Triangle, ...]
    stars_attached: tuple[Star, ...]
    cliques_containing: tuple[Clique, ...]
    cliques_attached: tuple[Clique, ...]
    total_motifs: int

    def __post_init__(self):
        if self.total_motifs != self.triangle_count + self.star_count + self.clique_count:
            raise ValueError("total_motifs must be the sum of the three counts")


def enumerate_triangles(g: LabeledGraph) -> list[Triangle]:
    """Every unordered node triple forming a triangle, each listed once."""
    out = []
    for a, b in g.sorted_edges():
        for c in g.neighbors(a) & g.neighbors(b):
            if c > b:  # a < b < c, so each triangle is found exactly once
                out.append((a, b, c))
    out.sort()
    return out


def enumerate_stars(g: LabeledGraph, min_leaves: int = DEFAULT_MIN_LEAVES) -> list[Star]:
    """Star motifs: a center with >= min_leaves neighbors and no edge among them."""
    if min_leaves < 2:
        raise ValueError("min_leaves must be >= 2")
    out = []
    for v in g.sorted_nodes():
        nb = g.neighbors(v)
        if len(nb) < min_leaves:
            continue
        if any(g.neighbors(u) & nb for u in nb):
            continue
        out.append((v, tuple(sorted(nb))))
    return out


def enumerate_maximal_cliques(g: LabeledGraph, min_size: int = DEFAULT_MIN_CLIQUE) -> list[Clique]:
    """Maximal cliques with at least ``min_size`` members (Bron-Kerbosch with pivot)."""
    if min_size < 3:
        raise ValueError("min_size must be >= 3")
    found: list[Clique] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(r) >= min_size:
                found.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(g.neighbors(u) & p))
        for v in sorted(p - g.neighbors(pivot)):
            nb = g.neighbors(v)
            expand(r + [v], p & nb, x & nb)
            p.remove(v)
            x.add(v)

    expand([], set(g.nodes), set())
    found.sort()
    return found


def motif_summary(
    sample: SubgraphSample,
    min_leaves: int = DEFAULT_MIN_LEAVES,
    min_clique: int = DEFAULT_MIN_CLIQUE,
) -> MotifSummary:
    """Count motifs in the sample subgraph and relate them to the target node."""
    g = sample.subgraph
    t = sample.target
    triangles = enumerate_triangles(g)
    stars = enumerate_stars(g, min_leaves)
    cliques = enumerate_maximal_cliques(g, min_clique)
    t_neighbors = g.neighbors(t)
    return MotifSummary(
        triangle_count=len(triangles),
        star_count=len(stars),
        clique_count=len(cliques),
        triangles_attached=tuple(tr for tr in triangles if t in tr),
        stars_attached=tuple(s for s in stars if t == s[0] or t in s[1]),
        cliques_containing=tuple(c for c in cliques if t in c),
        cliques_attached=tuple(
            c for c in cliques if t not in c and any(m in t_neighbors for m in c)
        ),
        total_motifs=len(triangles) + len(stars) + len(cliques),
    )
