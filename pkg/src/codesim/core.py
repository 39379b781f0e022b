"""Shared domain types: source units, scores, verdicts, measure identities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class InvalidScore(ValueError):
    """Raised when a similarity value is NaN or infinite."""


class InvalidThreshold(ValueError):
    """Raised when a classification threshold lies outside [0, 1]."""


class MeasureId(str, Enum):
    """Stable identifiers for the 21 similarity measures."""

    AST = "ast"
    BOW = "bow"
    EMBEDDING = "embedding"
    COMMENTS = "comments"
    FUZZY = "fuzzy"
    CALLS = "calls"
    GRAPH = "graph"
    JACCARD = "jaccard"
    LEVENSHTEIN = "levenshtein"
    LCS = "lcs"
    METRICS = "metrics"
    NGRAMS = "ngrams"
    OUTPUT = "output"
    PHASH = "phash"
    PDG = "pdg"
    RKRGST = "rkrgst"
    ROLLINGHASH = "rollinghash"
    SEMDIFF = "semdiff"
    SEMNAMES = "semnames"
    TFIDF = "tfidf"
    WINNOW = "winnow"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class CloneCategory(Enum):
    """Escalating clone dissimilarity levels (documentation labels only)."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


class CostClass(str, Enum):
    CHEAP = "cheap"
    MODERATE = "moderate"
    EXPENSIVE = "expensive"


def clamp(value: float) -> float:
    """Clamp a finite real into [0, 1]; NaN/inf are errors."""
    if not math.isfinite(value):
        raise InvalidScore(f"score must be finite, got {value!r}")
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class SourceUnit:
    """One code fragment: raw text plus provenance."""

    id: str
    path: str
    text: str
    task_id: str | None = None
    token_count: int = 0

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError(f"SourceUnit {self.id!r} has empty text")


@dataclass(frozen=True)
class SimilarityScore:
    """A similarity value in [0, 1] tagged with the producing measure."""

    value: float
    measure: MeasureId

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", clamp(self.value))


@dataclass(frozen=True)
class Verdict:
    is_clone: bool
    score: SimilarityScore
    threshold: float


@dataclass(frozen=True)
class MeasureDescriptor:
    """Registry entry for one measure: identity, tunables, cost class."""

    id: MeasureId
    display_name: str
    params: dict[str, float | int | str] = field(default_factory=dict)
    cost_class: CostClass = CostClass.CHEAP


def classify(score: SimilarityScore, threshold: float) -> Verdict:
    """Threshold classification; the comparison is inclusive (>=)."""
    if not (0.0 <= threshold <= 1.0):
        raise InvalidThreshold(f"threshold must be in [0, 1], got {threshold}")
    return Verdict(is_clone=score.value >= threshold, score=score, threshold=threshold)
