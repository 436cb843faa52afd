"""Benchmark pipeline: artifact generation, experiment runs, report emission.

A generated benchmark is a directory tree with one folder per sample
holding every encoding and prompt, an ``answers.tsv`` holding the hidden
ground truth, and a line-delimited ``manifest.json`` written last.  Run
logs are append-only line-delimited JSON so interrupted experiments can
resume without duplicating work.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .backends import (
    BackendConfig,
    MajorityVoteConfig,
    RateLimiter,
    RemoteConfig,
    UniformRandomConfig,
    majority_vote_predict,
    remote_predict,
    uniform_random_predict,
)
from .difficulty import DifficultyThresholds, task_difficulty
from .graph import LabeledGraph
from .image_encoder import IMAGE_STYLES, ImageEncoding, RenderConfig, render_svg
from .metrics import (
    MetricsReport,
    ModelLimits,
    PredictionRecord,
    TokenEstimator,
    compute_metrics,
    estimate_tokens,
)
from .motif_encoder import MOTIF_VARIANTS, encode_motif
from .motifs import DEFAULT_MIN_CLIQUE, DEFAULT_MIN_LEAVES, motif_summary
from .prompting import MODALITIES, ParsedPrediction, build_prompt, parse_response
from .sampling import EgoGraph, ForestFire, SampleSpec, SubgraphSample, draw_samples
from .text_encoder import EDGE_REPRESENTATIONS, TextEncoding, encode_text

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("group", "n", "A", "A_std", "M", "M_std", "D", "D_std", "T", "T_std")
GROUP_KEYS = ("modality", "difficulty", "representation")


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: str
    target: int
    source_center: int
    difficulty: Mapping[str, object]
    paths: Mapping[str, object]


@dataclass(frozen=True)
class BenchmarkManifest:
    root: Path
    meta: Mapping[str, object]
    entries: tuple[ManifestEntry, ...]

    @property
    def dataset(self) -> str:
        return self.meta["dataset"]

    @property
    def class_count(self) -> int:
        return self.meta["class_count"]

    @property
    def image_token_cost(self) -> int:
        return self.meta["image_token_cost"]

    def path_of(self, relative: str) -> Path:
        return self.root / relative


def _spec_to_dict(spec: SampleSpec) -> dict:
    if isinstance(spec.method, EgoGraph):
        method = {"name": "ego", "hops": spec.method.hops}
    else:
        method = {
            "name": "ff",
            "burn_prob": spec.method.burn_prob,
            "max_nodes": spec.method.max_nodes,
        }
    return {"method": method, "rng_seed": spec.rng_seed, "target_policy": spec.target_policy}


def _json_line(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _sample_to_dict(sample: SubgraphSample) -> dict:
    g = sample.subgraph
    return {
        "sample_id": sample.sample_id,
        "target": sample.target,
        "source_center": sample.source_center,
        "class_count": g.class_count,
        "nodes": g.sorted_nodes(),
        "edges": [list(e) for e in g.sorted_edges()],
        "labels": {str(v): lab for v, lab in sorted(g.labels.items())},
    }


def _sample_from_dict(data: dict, ground_truth: int, spec: SampleSpec) -> SubgraphSample:
    subgraph = LabeledGraph(
        data["nodes"],
        [tuple(e) for e in data["edges"]],
        {int(v): lab for v, lab in data["labels"].items()},
        class_count=data["class_count"],
    )
    return SubgraphSample(
        sample_id=data["sample_id"],
        subgraph=subgraph,
        target=data["target"],
        ground_truth=ground_truth,
        spec=spec,
        source_center=data["source_center"],
    )


def _spec_from_dict(data: dict) -> SampleSpec:
    method = data["method"]
    if method["name"] == "ego":
        m: EgoGraph | ForestFire = EgoGraph(hops=method["hops"])
    else:
        m = ForestFire(burn_prob=method["burn_prob"], max_nodes=method["max_nodes"])
    return SampleSpec(method=m, rng_seed=data["rng_seed"], target_policy=data["target_policy"])


def generate_benchmark(
    graph: LabeledGraph,
    dataset_name: str,
    spec: SampleSpec,
    n_samples: int,
    thresholds: DifficultyThresholds,
    out_dir: str | Path,
    text_representations: Sequence[str] = EDGE_REPRESENTATIONS,
    motif_variant: str = "star_and_triangle_attached",
    image_styles: Sequence[str] = IMAGE_STYLES,
    prompt_text_representation: str = "adjacency",
    prompt_image_style: str = "aggregate",
    render_config: RenderConfig | None = None,
    min_leaves: int = DEFAULT_MIN_LEAVES,
    min_clique: int = DEFAULT_MIN_CLIQUE,
    estimator: TokenEstimator = estimate_tokens,
) -> BenchmarkManifest:
    """Sample the graph and write every artifact under ``out_dir``.

    The manifest is written last and atomically, so a directory with a
    manifest is always a complete benchmark.
    """
    if prompt_text_representation not in text_representations:
        raise ValueError("prompt_text_representation must be one of text_representations")
    if prompt_image_style not in image_styles:
        raise ValueError("prompt_image_style must be one of image_styles")
    if motif_variant not in MOTIF_VARIANTS:
        raise ValueError(f"unknown motif variant {motif_variant!r}")
    render_config = render_config or RenderConfig()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    samples = draw_samples(graph, n_samples, spec)
    entries = []
    answers = []
    for sample in samples:
        rel_dir = Path(dataset_name) / sample.sample_id
        sample_dir = out_dir / rel_dir
        sample_dir.mkdir(parents=True, exist_ok=True)
        paths: dict[str, object] = {"sample": str(rel_dir / "sample.json")}
        (sample_dir / "sample.json").write_text(
            json.dumps(_sample_to_dict(sample), sort_keys=True, indent=1) + "\n",
            encoding="utf-8",
        )
        text_paths = {}
        text_encodings: dict[str, TextEncoding] = {}
        for representation in text_representations:
            enc = encode_text(sample, representation, estimator=estimator)
            text_encodings[representation] = enc
            name = f"text_{representation}.txt"
            (sample_dir / name).write_text(enc.payload, encoding="utf-8")
            text_paths[representation] = str(rel_dir / name)
        paths["text"] = text_paths
        summary = motif_summary(sample, min_leaves=min_leaves, min_clique=min_clique)
        motif_enc = encode_motif(sample, motif_variant, estimator=estimator, summary=summary)
        motif_name = f"motif_{motif_variant}.txt"
        (sample_dir / motif_name).write_text(motif_enc.payload, encoding="utf-8")
        paths["motif"] = {motif_variant: str(rel_dir / motif_name)}
        image_paths = {}
        image_encodings: dict[str, ImageEncoding] = {}
        for style in image_styles:
            img = render_svg(sample, style, render_config)
            image_encodings[style] = img
            name = f"image_{style}.svg"
            (sample_dir / name).write_text(img.svg_document, encoding="utf-8")
            image_paths[style] = str(rel_dir / name)
        paths["image"] = image_paths
        prompt_paths = {}
        bundles = {
            "text": build_prompt("text", text=text_encodings[prompt_text_representation]),
            "motif": build_prompt("motif", text=motif_enc),
            "image": build_prompt("image", image=image_encodings[prompt_image_style]),
            "text+image": build_prompt(
                "text+image",
                text=text_encodings[prompt_text_representation],
                image=image_encodings[prompt_image_style],
            ),
        }
        for modality, bundle in bundles.items():
            name = f"prompt_{modality}.txt"
            (sample_dir / name).write_text(bundle.message_text(), encoding="utf-8")
            prompt_paths[modality] = str(rel_dir / name)
        paths["prompt"] = prompt_paths
        assessment = task_difficulty(sample, summary, thresholds)
        entries.append(
            ManifestEntry(
                sample_id=sample.sample_id,
                target=sample.target,
                source_center=sample.source_center,
                difficulty={
                    "homophily": str(assessment.homophily_level),
                    "motif": str(assessment.motif_level),
                    "final": str(assessment.final),
                    "distinct_labels": assessment.distinct_labels,
                    "total_motifs": assessment.total_motifs,
                },
                paths=paths,
            )
        )
        answers.append((sample.sample_id, sample.ground_truth))
    with (out_dir / "answers.tsv").open("w", encoding="utf-8") as fh:
        for sample_id, gt in answers:
            fh.write(f"{sample_id}\t{gt}\n")
    meta = {
        "kind": "meta",
        "dataset": dataset_name,
        "n_samples": n_samples,
        "class_count": graph.class_count,
        "spec": _spec_to_dict(spec),
        "thresholds": {
            "label_medium": thresholds.label_medium,
            "label_hard": thresholds.label_hard,
            "motif_medium": thresholds.motif_medium,
            "motif_hard": thresholds.motif_hard,
        },
        "text_representations": list(text_representations),
        "motif_variant": motif_variant,
        "image_styles": list(image_styles),
        "prompt_text_representation": prompt_text_representation,
        "prompt_image_style": prompt_image_style,
        "image_token_cost": render_config.image_token_cost,
        "min_leaves": min_leaves,
        "min_clique": min_clique,
    }
    manifest_path = out_dir / "manifest.json"
    tmp_path = out_dir / "manifest.json.tmp"
    with tmp_path.open("w", encoding="utf-8") as fh:
        fh.write(_json_line(meta))
        for entry in entries:
            fh.write(
                _json_line(
                    {
                        "kind": "sample",
                        "sample_id": entry.sample_id,
                        "target": entry.target,
                        "source_center": entry.source_center,
                        "difficulty": dict(entry.difficulty),
                        "paths": entry.paths,
                    }
                )
            )
    os.replace(tmp_path, manifest_path)
    logger.info("wrote %d samples under %s", len(entries), out_dir)
    return BenchmarkManifest(root=out_dir, meta=meta, entries=tuple(entries))


def load_manifest(path: str | Path) -> BenchmarkManifest:
    """Read a manifest and check that every referenced artifact exists."""
    path = Path(path)
    root = path.parent
    meta = None
    entries = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            if obj["kind"] == "meta":
                meta = obj
            else:
                entries.append(
                    ManifestEntry(
                        sample_id=obj["sample_id"],
                        target=obj["target"],
                        source_center=obj["source_center"],
                        difficulty=obj["difficulty"],
                        paths=obj["paths"],
                    )
                )
    if meta is None:
        raise ValueError(f"{path}: missing meta line")
    manifest = BenchmarkManifest(root=root, meta=meta, entries=tuple(entries))
    for entry in entries:
        for rel in _iter_paths(entry.paths):
            if not (root / rel).exists():
                raise FileNotFoundError(f"{path}: missing artifact {rel}")
    if not (root / "answers.tsv").exists():
        raise FileNotFoundError(f"{path}: missing answers.tsv")
    return manifest


def _iter_paths(paths: Mapping[str, object]) -> Iterable[str]:
    for value in paths.values():
        if isinstance(value, str):
            yield value
        else:
            yield from value.values()  # type: ignore[union-attr]


def load_answers(manifest: BenchmarkManifest) -> dict[str, int]:
    answers = {}
    with (manifest.root / "answers.tsv").open("r", encoding="utf-8") as fh:
        for line in fh:
            sample_id, gt = line.rstrip("\n").split("\t")
            answers[sample_id] = int(gt)
    return answers


def tree_hash(root: str | Path) -> str:
    """SHA-256 over relative paths and file bytes; stable across machines."""
    root = Path(root)
    digest = hashlib.sha256()
    for file in sorted(p for p in root.rglob("*") if p.is_file()):
        digest.update(str(file.relative_to(root)).encode("utf-8"))
        digest.update(b"\0")
        digest.update(file.read_bytes())
        digest.update(b"\0")
    return digest.hexdigest()


# -- experiment runs -------------------------------------------------------------


def _record_to_json(record: PredictionRecord, raw_response: str) -> dict:
    return {
        "sample_id": record.sample_id,
        "run_id": record.run_id,
        "ground_truth": record.ground_truth,
        "prediction": {
            "kind": record.prediction.kind,
            "value": record.prediction.value,
        },
        "usage_tokens": record.usage_tokens,
        "modality": record.modality_tag,
        "representation": record.representation,
        "difficulty": record.difficulty,
        "raw_response": raw_response,
    }


def _record_from_json(obj: dict) -> PredictionRecord:
    pred = obj["prediction"]
    if pred["kind"] == "label":
        prediction = ParsedPrediction.label(pred["value"])
    elif pred["kind"] == "denial":
        prediction = ParsedPrediction.denial()
    else:
        prediction = ParsedPrediction.unparseable(obj.get("raw_response", ""))
    return PredictionRecord(
        sample_id=obj["sample_id"],
        ground_truth=obj["ground_truth"],
        prediction=prediction,
        usage_tokens=obj["usage_tokens"],
        modality_tag=obj["modality"],
        run_id=obj["run_id"],
        representation=obj.get("representation"),
        difficulty=obj.get("difficulty"),
    )


def load_log(path: str | Path) -> list[PredictionRecord]:
    records = []
    path = Path(path)
    if not path.exists():
        return records
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(_record_from_json(json.loads(line)))
    return records


def _build_bundle(
    manifest: BenchmarkManifest,
    entry: ManifestEntry,
    modality: str,
    text_representation: str,
    image_style: str,
    estimator: TokenEstimator,
):
    text_enc = None
    image_enc = None
    if modality in ("text", "text+image"):
        payload = manifest.path_of(entry.paths["text"][text_representation]).read_text("utf-8")
        text_enc = TextEncoding(payload, estimator(payload), representation=text_representation)
    if modality == "motif":
        variant, rel = next(iter(entry.paths["motif"].items()))
        payload = manifest.path_of(rel).read_text("utf-8")
        text_enc = TextEncoding(payload, estimator(payload), representation=variant, modality="motif")
    if modality in ("image", "text+image"):
        svg = manifest.path_of(entry.paths["image"][image_style]).read_text("utf-8")
        image_enc = ImageEncoding(svg, manifest.image_token_cost, style=image_style)
    return build_prompt(modality, text=text_enc, image=image_enc)


def run_experiment(
    manifest: BenchmarkManifest,
    modality: str,
    backend: BackendConfig,
    run_count: int,
    log_path: str | Path,
    text_representation: str | None = None,
    image_style: str | None = None,
    estimator: TokenEstimator = estimate_tokens,
    transport=None,
    limiter: RateLimiter | None = None,
    clock=None,
) -> list[PredictionRecord]:
    """Predict every sample ``run_count`` times, appending to ``log_path``.

    (run_id, sample_id) pairs already present in the log are skipped, so an
    interrupted run picks up where it left off.  Returns every record in the
    log for this modality after the run.
    """
    if modality not in MODALITIES:
        raise ValueError(f"unknown modality {modality!r}")
    if run_count < 1:
        raise ValueError("run_count must be >= 1")
    text_representation = text_representation or manifest.meta["prompt_text_representation"]
    image_style = image_style or manifest.meta["prompt_image_style"]
    log_path = Path(log_path)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    answers = load_answers(manifest)
    spec = _spec_from_dict(manifest.meta["spec"])
    existing = load_log(log_path)
    done = {(r.run_id, r.sample_id) for r in existing if r.modality_tag == modality}
    if isinstance(backend, RemoteConfig) and limiter is None:
        limiter = RateLimiter(backend.requests_per_minute, backend.requests_per_day, clock=clock)
    skipped = 0
    with log_path.open("a", encoding="utf-8") as fh:
        for run_id in range(run_count):
            for entry in manifest.entries:
                if (run_id, entry.sample_id) in done:
                    skipped += 1
                    continue
                bundle = _build_bundle(
                    manifest, entry, modality, text_representation, image_style, estimator
                )
                usage = None
                if isinstance(backend, MajorityVoteConfig):
                    sample_data = json.loads(
                        manifest.path_of(entry.paths["sample"]).read_text("utf-8")
                    )
                    sample = _sample_from_dict(sample_data, answers[entry.sample_id], spec)
                    raw = majority_vote_predict(sample)
                elif isinstance(backend, UniformRandomConfig):
                    sample_data = json.loads(
                        manifest.path_of(entry.paths["sample"]).read_text("utf-8")
                    )
                    sample = _sample_from_dict(sample_data, answers[entry.sample_id], spec)
                    raw = uniform_random_predict(sample, backend, run_id=run_id)
                elif isinstance(backend, RemoteConfig):
                    reply = remote_predict(
                        bundle, backend, transport=transport, limiter=limiter, clock=clock
                    )
                    raw = reply.text
                    usage = reply.usage_tokens
                else:
                    raise ValueError(f"unknown backend config {backend!r}")
                if usage is None:
                    usage = estimator(bundle.message_text())
                    if bundle.image_payload is not None:
                        usage += bundle.image_payload.token_estimate
                representation = {
                    "text": text_representation,
                    "text+image": text_representation,
                    "motif": next(iter(entry.paths["motif"])),
                    "image": image_style,
                }[modality]
                record = PredictionRecord(
                    sample_id=entry.sample_id,
                    ground_truth=answers[entry.sample_id],
                    prediction=parse_response(raw),
                    usage_tokens=usage,
                    modality_tag=modality,
                    run_id=run_id,
                    representation=representation,
                    difficulty=entry.difficulty["final"],
                )
                fh.write(_json_line(_record_to_json(record, raw)))
                fh.flush()
    if skipped:
        logger.info("skipped %d already-logged predictions", skipped)
    return [r for r in load_log(log_path) if r.modality_tag == modality]


# -- reports ----------------------------------------------------------------------


def emit_report(
    records: Sequence[PredictionRecord] | str | Path,
    limits: ModelLimits,
    group_by: str = "modality",
    out_csv: str | Path | None = None,
) -> list[dict[str, object]]:
    """Per-group metric rows; the accuracy identity is re-checked on each row."""
    if isinstance(records, (str, Path)):
        records = load_log(records)
    if group_by not in GROUP_KEYS:
        raise ValueError(f"group_by must be one of {GROUP_KEYS}")
    if not records:
        raise ValueError("no records to report")

    def key(r: PredictionRecord) -> str:
        value = {
            "modality": r.modality_tag,
            "difficulty": r.difficulty,
            "representation": r.representation,
        }[group_by]
        return value if value is not None else "unknown"

    rows = []
    for group in sorted({key(r) for r in records}):
        subset = [r for r in records if key(r) == group]
        report: MetricsReport = compute_metrics(subset, limits)
        rows.append(
            {
                "group": group,
                "n": report.n,
                "A": report.accuracy,
                "A_std": report.accuracy_std,
                "M": report.mismatch,
                "M_std": report.mismatch_std,
                "D": report.denial,
                "D_std": report.denial_std,
                "T": report.token_fraction,
                "T_std": report.token_fraction_std,
            }
        )
    if out_csv is not None:
        out_csv = Path(out_csv)
        out_csv.parent.mkdir(parents=True, exist_ok=True)
        with out_csv.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=REPORT_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    return rows


# -- raw citation files ------------------------------------------------------------


def convert_citation_files(
    content_path: str | Path,
    cites_path: str | Path,
    out_nodes: str | Path,
    out_edges: str | Path,
    label_map_path: str | Path | None = None,
) -> dict[str, object]:
    """Convert raw citation-network files to the TSV pair read by load_dataset.

    The content file carries ``<paper id> <features...> <label name>`` rows
    and the cites file ``<cited id> <citing id>`` rows.  Paper ids become
    dense integer ids (sorted lexicographically), label names become label
    indices (sorted).  Citation rows naming unknown papers are skipped with
    a count; duplicate and reversed citations collapse to one edge.
    """
    content_path, cites_path = Path(content_path), Path(cites_path)
    raw_labels: dict[str, str] = {}
    with content_path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) < 2:
                raise ValueError(f"{content_path}:{lineno}: expected id, features, label")
            raw_labels[parts[0]] = parts[-1]
    node_ids = {raw: i for i, raw in enumerate(sorted(raw_labels))}
    label_names = sorted(set(raw_labels.values()))
    label_ids = {name: i for i, name in enumerate(label_names)}
    edges: set[tuple[int, int]] = set()
    skipped = 0
    self_loops = 0
    with cites_path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ValueError(f"{cites_path}:{lineno}: expected two paper ids")
            a_raw, b_raw = parts
            if a_raw not in node_ids or b_raw not in node_ids:
                skipped += 1
                continue
            a, b = node_ids[a_raw], node_ids[b_raw]
            if a == b:
                self_loops += 1
                continue
            edges.add((a, b) if a < b else (b, a))
    if skipped:
        logger.warning("%s: skipped %d citation(s) naming unknown papers", cites_path, skipped)
    if self_loops:
        logger.warning("%s: dropped %d self-citation(s)", cites_path, self_loops)
    out_nodes, out_edges = Path(out_nodes), Path(out_edges)
    with out_nodes.open("w", encoding="utf-8") as fh:
        for raw in sorted(raw_labels):
            fh.write(f"{node_ids[raw]}\t{label_ids[raw_labels[raw]]}\n")
    with out_edges.open("w", encoding="utf-8") as fh:
        for a, b in sorted(edges):
            fh.write(f"{a}\t{b}\n")
    if label_map_path is not None:
        Path(label_map_path).write_text(
            json.dumps(label_ids, sort_keys=True, indent=1) + "\n", encoding="utf-8"
        )
    return {
        "nodes": len(node_ids),
        "edges": len(edges),
        "classes": len(label_names),
        "skipped_citations": skipped,
        "self_citations": self_loops,
        "label_names": label_names,
    }
