"""Unsupervised source-code similarity measures and a clone-detection
benchmark harness."""

from codesim.core import (
    CloneCategory,
    MeasureDescriptor,
    MeasureId,
    SimilarityScore,
    SourceUnit,
    Verdict,
    clamp,
    classify,
)

__all__ = [
    "CloneCategory",
    "MeasureDescriptor",
    "MeasureId",
    "SimilarityScore",
    "SourceUnit",
    "Verdict",
    "clamp",
    "classify",
]

__version__ = "0.1.0"
