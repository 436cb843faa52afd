"""Command line interface: convert, properties, generate, run, report."""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .backends import BackendError, MajorityVoteConfig, RemoteConfig, UniformRandomConfig
from .bench import (
    GROUP_KEYS,
    convert_citation_files,
    emit_report,
    generate_benchmark,
    load_manifest,
    run_experiment,
)
from .difficulty import DifficultyThresholds
from .graph import DIAMETER_NODE_CAP, compute_properties, k_hop_stats, load_dataset
from .image_encoder import IMAGE_STYLES, RenderConfig
from .metrics import TEXT_TOKEN_LIMIT, VISION_TOKEN_LIMIT, ModelLimits
from .motif_encoder import MOTIF_VARIANTS
from .prompting import MODALITIES
from .sampling import EgoGraph, ForestFire, SampleSpec
from .text_encoder import EDGE_REPRESENTATIONS

logger = logging.getLogger(__name__)


def _add_dataset_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--nodes", required=True, help="node TSV file (id<TAB>label)")
    parser.add_argument("--edges", required=True, help="edge TSV file (src<TAB>dst)")
    parser.add_argument("--class-count", type=int, default=None, help="declared class count")


def _cmd_convert(args: argparse.Namespace) -> int:
    summary = convert_citation_files(
        args.content, args.cites, args.out_nodes, args.out_edges, args.label_map
    )
    print(json.dumps(summary, indent=1, sort_keys=True))
    return 0


def _cmd_properties(args: argparse.Namespace) -> int:
    g = load_dataset(args.nodes, args.edges, class_count=args.class_count)
    props = compute_properties(g, diameter_cap=args.diameter_cap)
    if props.diameter is None:
        diameter: object = "Unknown"
    elif math.isinf(props.diameter):
        diameter = "Infinite"
    else:
        diameter = props.diameter
    out = {
        "node_count": props.node_count,
        "edge_count": props.edge_count,
        "density": props.density,
        "average_degree": props.average_degree,
        "clustering_coefficient": props.clustering_coefficient,
        "diameter": diameter,
        "component_count": props.component_count,
        "class_count": g.class_count,
    }
    if args.khop:
        stats = k_hop_stats(g, args.khop, sample_size=args.khop_sample, rng_seed=args.khop_seed)
        out["khop"] = {
            "k": stats.k,
            "centers": stats.centers,
            "mean_nodes": stats.mean_nodes,
            "std_nodes": stats.std_nodes,
            "mean_edges": stats.mean_edges,
            "std_edges": stats.std_edges,
        }
    print(json.dumps(out, indent=1, sort_keys=True))
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    g = load_dataset(args.nodes, args.edges, class_count=args.class_count)
    if args.method == "ego":
        method: EgoGraph | ForestFire = EgoGraph(hops=args.hops)
    else:
        method = ForestFire(burn_prob=args.burn_prob, max_nodes=args.max_nodes)
    spec = SampleSpec(method=method, rng_seed=args.seed)
    thresholds = DifficultyThresholds(
        label_medium=args.label_medium,
        label_hard=args.label_hard,
        motif_medium=args.motif_medium,
        motif_hard=args.motif_hard,
    )
    manifest = generate_benchmark(
        g,
        args.dataset,
        spec,
        args.samples,
        thresholds,
        args.out,
        motif_variant=args.motif_variant,
        prompt_text_representation=args.prompt_text_repr,
        prompt_image_style=args.prompt_image_style,
        render_config=RenderConfig(layout_seed=args.seed),
    )
    print(f"wrote {len(manifest.entries)} samples to {manifest.root / 'manifest.json'}")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    if args.backend == "majority":
        backend: object = MajorityVoteConfig()
    elif args.backend == "random":
        backend = UniformRandomConfig(seed=args.backend_seed)
    else:
        if not args.endpoint or not args.model:
            raise ValueError("remote backend needs --endpoint and --model")
        backend = RemoteConfig(
            endpoint=args.endpoint,
            model=args.model,
            api_key_env=args.api_key_env,
            requests_per_minute=args.rpm,
            requests_per_day=args.rpd,
            max_retries=args.max_retries,
            timeout=args.timeout,
            vision_capable=args.vision,
        )
    records = run_experiment(
        manifest,
        args.modality,
        backend,
        args.runs,
        args.log,
        text_representation=args.text_repr,
        image_style=args.image_style,
    )
    print(f"{len(records)} predictions for modality {args.modality!r} in {args.log}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    limits = ModelLimits(args.token_limit)
    rows = emit_report(args.log, limits, group_by=args.group_by, out_csv=args.out)
    width = max(len(str(r["group"])) for r in rows)
    print(f"{'group':<{width}}  {'n':>5}  {'A':>7}  {'M':>7}  {'D':>7}  {'T':>7}")
    for row in rows:
        print(
            f"{row['group']:<{width}}  {row['n']:>5}  {row['A']:>7.4f}  "
            f"{row['M']:>7.4f}  {row['D']:>7.4f}  {row['T']:>7.4f}"
        )
    if args.out:
        print(f"report written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmodal",
        description="Encode graph samples as text, motif and image prompts and score predictions.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert raw citation files to the TSV pair")
    p.add_argument("--content", required=True, help="raw content file (id features label)")
    p.add_argument("--cites", required=True, help="raw citation file (cited citing)")
    p.add_argument("--out-nodes", required=True)
    p.add_argument("--out-edges", required=True)
    p.add_argument("--label-map", default=None, help="optional JSON file for the label name map")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("properties", help="print global graph statistics as JSON")
    _add_dataset_args(p)
    p.add_argument("--diameter-cap", type=int, default=DIAMETER_NODE_CAP)
    p.add_argument("--khop", type=int, default=None, help="also report k-hop neighborhood stats")
    p.add_argument("--khop-sample", type=int, default=None, help="centers to sample (default all)")
    p.add_argument("--khop-seed", type=int, default=0)
    p.set_defaults(func=_cmd_properties)

    p = sub.add_parser("generate", help="sample a graph and write a benchmark directory")
    _add_dataset_args(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, required=True, help="sampling seed")
    p.add_argument("--dataset", default="dataset", help="dataset name used in the layout")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--method", choices=("ego", "ff"), default="ego")
    p.add_argument("--hops", type=int, default=3)
    p.add_argument("--burn-prob", type=float, default=0.7)
    p.add_argument("--max-nodes", type=int, default=200)
    p.add_argument("--motif-variant", choices=MOTIF_VARIANTS, default="star_and_triangle_attached")
    p.add_argument("--prompt-text-repr", choices=EDGE_REPRESENTATIONS, default="adjacency")
    p.add_argument("--prompt-image-style", choices=IMAGE_STYLES, default="aggregate")
    p.add_argument("--label-medium", type=int, default=3)
    p.add_argument("--label-hard", type=int, default=5)
    p.add_argument("--motif-medium", type=int, default=10)
    p.add_argument("--motif-hard", type=int, default=20)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("run", help="run one backend over a generated benchmark")
    p.add_argument("--manifest", required=True)
    p.add_argument("--modality", choices=MODALITIES, required=True)
    p.add_argument("--backend", choices=("majority", "random", "remote"), required=True)
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--log", required=True, help="append-only prediction log (JSON lines)")
    p.add_argument("--text-repr", choices=EDGE_REPRESENTATIONS, default=None)
    p.add_argument("--image-style", choices=IMAGE_STYLES, default=None)
    p.add_argument("--backend-seed", type=int, default=0, help="seed for the random backend")
    p.add_argument("--endpoint", default=None, help="chat-completions URL (remote)")
    p.add_argument("--model", default=None, help="model name (remote)")
    p.add_argument("--api-key-env", default="GRAPHMODAL_API_KEY")
    p.add_argument("--rpm", type=int, default=10000, help="requests per minute (remote)")
    p.add_argument("--rpd", type=int, default=100, help="requests per day (remote)")
    p.add_argument("--max-retries", type=int, default=3)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--vision", action="store_true", help="the remote model accepts images")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("report", help="aggregate a prediction log into metric rows")
    p.add_argument("--log", required=True)
    p.add_argument("--group-by", choices=GROUP_KEYS, default="modality")
    p.add_argument("--token-limit", type=int, default=TEXT_TOKEN_LIMIT,
                   help=f"context budget, e.g. {TEXT_TOKEN_LIMIT} text or {VISION_TOKEN_LIMIT} vision")
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, AssertionError, OSError, BackendError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
