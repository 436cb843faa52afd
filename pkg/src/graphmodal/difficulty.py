"""Task difficulty stratification from label diversity and motif density."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping

from .motifs import MotifSummary
from .sampling import SubgraphSample


class DifficultyLevel(enum.IntEnum):
    EASY = 0
    MEDIUM = 1
    HARD = 2

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "DifficultyLevel":
        return cls[text.upper()]


@dataclass(frozen=True)
class DifficultyThresholds:
    label_medium: int = 3
    label_hard: int = 5
    motif_medium: int = 10
    motif_hard: int = 20

    def __post_init__(self):
        if not 0 < self.label_medium < self.label_hard:
            raise ValueError("need 0 < label_medium < label_hard")
        if not 0 < self.motif_medium < self.motif_hard:
            raise ValueError("need 0 < motif_medium < motif_hard")


@dataclass(frozen=True)
class DifficultyAssessment:
    homophily_level: DifficultyLevel
    motif_level: DifficultyLevel
    final: DifficultyLevel
    distinct_labels: int = 0
    total_motifs: int = 0

    def __post_init__(self):
        if self.final != max(self.homophily_level, self.motif_level):
            raise ValueError("final level must be the max of the two components")

    @classmethod
    def from_levels(
        cls,
        homophily_level: DifficultyLevel,
        motif_level: DifficultyLevel,
        distinct_labels: int = 0,
        total_motifs: int = 0,
    ) -> "DifficultyAssessment":
        return cls(
            homophily_level=homophily_level,
            motif_level=motif_level,
            final=max(homophily_level, motif_level),
            distinct_labels=distinct_labels,
            total_motifs=total_motifs,
        )


@dataclass(frozen=True)
class DifficultyStats:
    combination: Mapping[tuple[DifficultyLevel, DifficultyLevel], int]
    finals: Mapping[DifficultyLevel, int]


def homophily_level(
    sample: SubgraphSample, thresholds: DifficultyThresholds = DifficultyThresholds()
) -> DifficultyLevel:
    """Level from the number of distinct labels among the non-target nodes."""
    distinct = len(set(sample.subgraph.labels.values()))
    if distinct < thresholds.label_medium:
        return DifficultyLevel.EASY
    if distinct < thresholds.label_hard:
        return DifficultyLevel.MEDIUM
    return DifficultyLevel.HARD


def motif_level(
    summary: MotifSummary, thresholds: DifficultyThresholds = DifficultyThresholds()
) -> DifficultyLevel:
    """Level from the total motif count; both boundaries stay in the lower level."""
    total = summary.total_motifs
    if total <= thresholds.motif_medium:
        return DifficultyLevel.EASY
    if total <= thresholds.motif_hard:
        return DifficultyLevel.MEDIUM
    return DifficultyLevel.HARD


def task_difficulty(
    sample: SubgraphSample,
    summary: MotifSummary,
    thresholds: DifficultyThresholds = DifficultyThresholds(),
) -> DifficultyAssessment:
    """Combined difficulty: the harder of the homophily and motif levels."""
    return DifficultyAssessment.from_levels(
        homophily_level(sample, thresholds),
        motif_level(summary, thresholds),
        distinct_labels=len(set(sample.subgraph.labels.values())),
        total_motifs=summary.total_motifs,
    )


def aggregate_difficulty_stats(assessments: Iterable[DifficultyAssessment]) -> DifficultyStats:
    """3x3 combination table plus final-level totals, with the identity checked."""
    combination = {
        (h, m): 0 for h in DifficultyLevel for m in DifficultyLevel
    }
    finals = {level: 0 for level in DifficultyLevel}
    for a in assessments:
        combination[(a.homophily_level, a.motif_level)] += 1
        finals[a.final] += 1
    for level in DifficultyLevel:
        projected = sum(
            count for (h, m), count in combination.items() if max(h, m) == level
        )
        if projected != finals[level]:
            raise AssertionError(
                f"final totals disagree with the combination table at {level}"
            )
    return DifficultyStats(combination=combination, finals=finals)
