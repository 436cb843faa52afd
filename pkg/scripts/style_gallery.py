"""Render every encoding of one sample into a gallery directory.

Writes the five text payloads, every motif variant, and the six SVG image
styles (plus PNG rasterizations) for a single ego sample drawn from a small
synthetic graph, so the format contracts can be inspected by eye.
"""

from __future__ import annotations

import argparse
import random
from itertools import combinations
from pathlib import Path

from graphmodal.backends import rasterize_svg
from graphmodal.graph import LabeledGraph
from graphmodal.image_encoder import IMAGE_STYLES, render_svg
from graphmodal.metrics import estimate_tokens
from graphmodal.motif_encoder import MOTIF_VARIANTS, encode_motif
from graphmodal.prompting import build_prompt
from graphmodal.sampling import ego_sample
from graphmodal.text_encoder import EDGE_REPRESENTATIONS, encode_text


def demo_graph(rng_seed: int) -> LabeledGraph:
    """A 24-node graph with enough structure to light up every encoder."""
    rng = random.Random(rng_seed)
    nodes = list(range(24))
    edges = set()
    for block in (range(0, 4), range(4, 8)):  # two K4 cliques
        edges.update(combinations(block, 2))
    edges.update((8, leaf) for leaf in (9, 10, 11, 12))  # a star
    for a, b in combinations(nodes, 2):  # sparse noise
        if rng.random() < 0.08:
            edges.add((a, b))
    labels = {v: rng.randrange(4) for v in nodes}
    return LabeledGraph(nodes, sorted(edges), labels, class_count=4)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("gallery"))
    parser.add_argument("--seed", type=int, default=5)
    parser.add_argument("--center", type=int, default=0)
    parser.add_argument("--hops", type=int, default=2)
    args = parser.parse_args(argv)

    g = demo_graph(args.seed)
    sample = ego_sample(g, args.center, k=args.hops)
    print(
        f"sample {sample.sample_id}: {len(sample.subgraph.nodes)} nodes, "
        f"{len(sample.subgraph.edges)} edges, target {sample.target}"
    )
    args.out.mkdir(parents=True, exist_ok=True)

    for representation in EDGE_REPRESENTATIONS:
        enc = encode_text(sample, representation)
        path = args.out / f"text_{representation}.txt"
        path.write_text(enc.payload + "\n", encoding="utf-8")
        print(f"  {path}  ({enc.token_estimate} tokens)")

    for variant in MOTIF_VARIANTS:
        enc = encode_motif(sample, variant)
        path = args.out / f"motif_{variant}.txt"
        path.write_text(enc.payload + "\n", encoding="utf-8")
        print(f"  {path}  ({enc.token_estimate} tokens)")

    for style in IMAGE_STYLES:
        enc = render_svg(sample, style)
        svg_path = args.out / f"image_{style}.svg"
        svg_path.write_text(enc.svg_document, encoding="utf-8")
        png_path = svg_path.with_suffix(".png")
        png_path.write_bytes(rasterize_svg(enc.svg_document))
        print(f"  {svg_path}  +  {png_path.name}")

    bundle = build_prompt("text", text=encode_text(sample, "adjacency"))
    prompt_path = args.out / "prompt_text.txt"
    message = bundle.message_text()
    prompt_path.write_text(message + "\n", encoding="utf-8")
    print(f"  {prompt_path}  (full prompt, {estimate_tokens(message)} tokens)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
