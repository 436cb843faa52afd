"""Scoring for node classification runs: accuracy, mismatch, denial, token use.

Every parsed prediction falls in exactly one bucket, so accuracy +
mismatch + denial = 1 for any record set.  Unparseable responses count
toward denial but stay distinguishable in the prediction records.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean, pstdev
from typing import TYPE_CHECKING, Callable, Sequence

if TYPE_CHECKING:  # avoids a module cycle; only needed for type checkers
    from .prompting import ParsedPrediction

TEXT_TOKEN_LIMIT = 8192
VISION_TOKEN_LIMIT = 10000

IDENTITY_TOLERANCE = 1e-12


def estimate_tokens(text: str) -> int:
    """Crude token count: one token per 4 bytes of UTF-8, rounded up."""
    return -(-len(text.encode("utf-8")) // 4)


TokenEstimator = Callable[[str], int]


@dataclass(frozen=True)
class ModelLimits:
    token_limit: int

    def __post_init__(self):
        if self.token_limit < 1:
            raise ValueError("token_limit must be >= 1")

    @classmethod
    def for_text(cls) -> "ModelLimits":
        return cls(TEXT_TOKEN_LIMIT)

    @classmethod
    def for_vision(cls) -> "ModelLimits":
        return cls(VISION_TOKEN_LIMIT)


def token_fraction(usage_tokens: int, limits: ModelLimits) -> float:
    if usage_tokens < 0:
        raise ValueError("usage_tokens must be >= 0")
    return usage_tokens / limits.token_limit


@dataclass(frozen=True)
class PredictionRecord:
    sample_id: str
    ground_truth: int
    prediction: "ParsedPrediction"
    usage_tokens: int
    modality_tag: str
    run_id: int = 0
    representation: str | None = None
    difficulty: str | None = None


@dataclass(frozen=True)
class MetricsReport:
    n: int
    accuracy: float
    mismatch: float
    denial: float
    token_fraction: float
    accuracy_std: float
    mismatch_std: float
    denial_std: float
    token_fraction_std: float
    over_limit: int


def _bucket(record: PredictionRecord) -> str:
    p = record.prediction
    if p.kind == "label":
        return "correct" if p.value == record.ground_truth else "wrong"
    # denial and unparseable both land in the denial bucket
    return "denial"


def _rates(records: Sequence[PredictionRecord], limits: ModelLimits) -> tuple[float, float, float, float]:
    n = len(records)
    buckets = [_bucket(r) for r in records]
    a = buckets.count("correct") / n
    m = buckets.count("wrong") / n
    d = buckets.count("denial") / n
    t = fmean(token_fraction(r.usage_tokens, limits) for r in records)
    return a, m, d, t


def compute_metrics(records: Sequence[PredictionRecord], limits: ModelLimits) -> MetricsReport:
    """Aggregate a record set; the std fields spread across run_id groups."""
    if not records:
        raise ValueError("no records to score")
    a, m, d, t = _rates(records, limits)
    if abs(a + m + d - 1.0) > IDENTITY_TOLERANCE:
        raise AssertionError(f"rate identity violated: {a} + {m} + {d} != 1")
    groups = sorted({r.run_id for r in records})
    per_group = [_rates([r for r in records if r.run_id == gid], limits) for gid in groups]
    stds = [pstdev([g[i] for g in per_group]) for i in range(4)]
    over = sum(1 for r in records if token_fraction(r.usage_tokens, limits) > 1.0)
    return MetricsReport(
        n=len(records),
        accuracy=a,
        mismatch=m,
        denial=d,
        token_fraction=t,
        accuracy_std=stds[0],
        mismatch_std=stds[1],
        denial_std=stds[2],
        token_fraction_std=stds[3],
        over_limit=over,
    )
