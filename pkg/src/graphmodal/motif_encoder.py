"""Motif-information text payloads.

Each variant renders the node-label mapping followed by a selection of
motif facts about the sample.  Node groups print as ``[a,b,c]`` with
members ascending and groups in lexicographic order.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .metrics import TokenEstimator, estimate_tokens
from .motifs import DEFAULT_MIN_CLIQUE, DEFAULT_MIN_LEAVES, MotifSummary, motif_summary
from .sampling import SubgraphSample
from .text_encoder import TextEncoding, encode_node_label_mapping

MOTIF_VARIANTS = (
    "mapping_only",
    "star_count",
    "triangle_count",
    "triangles_attached",
    "stars_attached",
    "star_and_triangle_counts",
    "star_and_triangle_attached",
    "cliques_containing",
    "cliques_attached",
    "aggregate",
)

_HEADER = "Graph motif information: "


def _group_list(groups: Iterable[Sequence[int]]) -> str:
    canonical = sorted(tuple(sorted(group)) for group in groups)
    if not canonical:
        return "[]"
    return ", ".join(f"[{','.join(str(v) for v in group)}]" for group in canonical)


def _star_members(stars) -> list[tuple[int, ...]]:
    return [tuple(sorted((center, *leaves))) for center, leaves in stars]


def _parts(summary: MotifSummary, variant: str) -> list[str]:
    star_count = f"Number of star motifs: {summary.star_count}|"
    triangle_count = f"Number of triangle motifs: {summary.triangle_count}|"
    triangles_attached = (
        f"Triangle motifs attached to ? node: {_group_list(summary.triangles_attached)}|"
    )
    stars_attached = (
        f"Star motifs connected to ? node: {_group_list(_star_members(summary.stars_attached))}|"
    )
    clique_count = f"Number of cliques in graph: {summary.clique_count}|"
    cliques_containing = (
        f"? Node is a part of these cliques: {_group_list(summary.cliques_containing)}|"
    )
    cliques_attached = (
        f"? Node is attached to these cliques: {_group_list(summary.cliques_attached)}|"
    )
    table = {
        "star_count": [star_count],
        "triangle_count": [triangle_count],
        "triangles_attached": [triangles_attached],
        "stars_attached": [stars_attached],
        "star_and_triangle_counts": [star_count, triangle_count],
        "star_and_triangle_attached": [triangles_attached, stars_attached],
        "cliques_containing": [clique_count, cliques_containing],
        "cliques_attached": [cliques_attached],
        "aggregate": [
            star_count,
            triangle_count,
            triangles_attached,
            stars_attached,
            clique_count,
            cliques_containing,
            cliques_attached,
        ],
    }
    return table[variant]


def encode_motif(
    sample: SubgraphSample,
    variant: str = "star_and_triangle_attached",
    min_leaves: int = DEFAULT_MIN_LEAVES,
    min_clique: int = DEFAULT_MIN_CLIQUE,
    estimator: TokenEstimator = estimate_tokens,
    summary: MotifSummary | None = None,
) -> TextEncoding:
    """Mapping plus the motif facts selected by ``variant``.

    ``mapping_only`` emits the bare mapping with no motif header.  A
    precomputed ``summary`` may be passed to avoid re-enumeration.
    """
    if variant not in MOTIF_VARIANTS:
        raise ValueError(f"unknown motif variant {variant!r}")
    mapping = encode_node_label_mapping(sample)
    if variant == "mapping_only":
        payload = mapping
    else:
        if summary is None:
            summary = motif_summary(sample, min_leaves=min_leaves, min_clique=min_clique)
        payload = f"{mapping}\n{_HEADER}{' '.join(_parts(summary, variant))}"
    return TextEncoding(
        payload=payload,
        token_estimate=estimator(payload),
        representation=variant,
        modality="motif",
    )
