"""Graph samples as text, motif and image prompts, with difficulty-aware scoring."""

from .backends import (
    BackendError,
    MajorityVoteConfig,
    RateLimiter,
    RemoteConfig,
    UniformRandomConfig,
    majority_vote_predict,
    remote_predict,
)
from .bench import (
    BenchmarkManifest,
    convert_citation_files,
    emit_report,
    generate_benchmark,
    load_manifest,
    run_experiment,
    tree_hash,
)
from .difficulty import (
    DifficultyAssessment,
    DifficultyLevel,
    DifficultyThresholds,
    aggregate_difficulty_stats,
    homophily_level,
    motif_level,
    task_difficulty,
)
from .graph import (
    INFINITE,
    DatasetFormatError,
    GraphProperties,
    KHopStats,
    LabeledGraph,
    compute_properties,
    induced_subgraph,
    k_hop_stats,
    load_dataset,
    write_dataset,
)
from .image_encoder import IMAGE_STYLES, ImageEncoding, RenderConfig, layout, render_svg
from .metrics import (
    TEXT_TOKEN_LIMIT,
    VISION_TOKEN_LIMIT,
    MetricsReport,
    ModelLimits,
    PredictionRecord,
    compute_metrics,
    estimate_tokens,
    token_fraction,
)
from .motif_encoder import MOTIF_VARIANTS, encode_motif
from .motifs import (
    MotifSummary,
    enumerate_maximal_cliques,
    enumerate_stars,
    enumerate_triangles,
    motif_summary,
)
from .prompting import (
    MODALITIES,
    ParsedPrediction,
    PromptBundle,
    build_prompt,
    parse_response,
)
from .sampling import (
    EgoGraph,
    ForestFire,
    SampleSpec,
    SubgraphSample,
    draw_samples,
    ego_sample,
    forest_fire_sample,
)
from .text_encoder import (
    EDGE_REPRESENTATIONS,
    TextEncoding,
    encode_edges,
    encode_node_label_mapping,
    encode_text,
)

__version__ = "0.1.0"
