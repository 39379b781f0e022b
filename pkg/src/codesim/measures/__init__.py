"""Measure registry: one uniform scoring entry point for all 21 measures."""

from __future__ import annotations

from dataclasses import dataclass, field

from codesim.core import CostClass, MeasureDescriptor, MeasureId, SimilarityScore, SourceUnit
from codesim.measures import behavioral, fingerprint, lexical, structural
from codesim.measures.behavioral import EmbeddingProvider, ToolchainMissing

DESCRIPTORS: dict[MeasureId, MeasureDescriptor] = {
    d.id: d
    for d in [
        MeasureDescriptor(MeasureId.AST, "Abstract Syntax Trees Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.BOW, "Bag-of-Words Similarity"),
        MeasureDescriptor(MeasureId.EMBEDDING, "Code Embeddings Similarity", cost_class=CostClass.EXPENSIVE),
        MeasureDescriptor(MeasureId.COMMENTS, "Comments Similarity"),
        MeasureDescriptor(MeasureId.FUZZY, "Fuzzy Matching Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.CALLS, "Function Calls Similarity"),
        MeasureDescriptor(MeasureId.GRAPH, "Graph-based Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.JACCARD, "Jaccard Similarity"),
        MeasureDescriptor(MeasureId.LEVENSHTEIN, "Levenshtein Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.LCS, "Longest Common Subsequence Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.METRICS, "Metrics Similarity"),
        MeasureDescriptor(MeasureId.NGRAMS, "N-grams Similarity", params={"n": 3}),
        MeasureDescriptor(MeasureId.OUTPUT, "Output Analysis Similarity", cost_class=CostClass.EXPENSIVE),
        MeasureDescriptor(MeasureId.PHASH, "Perceptual Hashing Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.PDG, "Program Dependence Graph Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.RKRGST, "RKR-GST Similarity", params={"mml": fingerprint.DEFAULT_GST_MML}, cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.ROLLINGHASH, "Rolling Hash Similarity", params={"k": fingerprint.DEFAULT_ROLLING_K}),
        MeasureDescriptor(MeasureId.SEMDIFF, "Semdiff Similarity", cost_class=CostClass.MODERATE),
        MeasureDescriptor(MeasureId.SEMNAMES, "Semantic Clone Similarity"),
        MeasureDescriptor(MeasureId.TFIDF, "TF-IDF Similarity"),
        MeasureDescriptor(
            MeasureId.WINNOW,
            "Winnow Similarity",
            params={"k": fingerprint.DEFAULT_WINNOW_K, "w": fingerprint.DEFAULT_WINNOW_W},
        ),
    ]
}

ALL_MEASURES: tuple[MeasureId, ...] = tuple(sorted(DESCRIPTORS, key=lambda m: m.value))

# Measures excluded from the cheap benchmark profile.
HEAVY_MEASURES = frozenset({MeasureId.OUTPUT, MeasureId.EMBEDDING})


@dataclass
class ScoringContext:
    """Shared per-run state: corpus statistics, external providers, warnings."""

    corpus: list[SourceUnit] | None = None
    provider: EmbeddingProvider | None = None
    timeout_ms: int = behavioral.DEFAULT_TIMEOUT_MS
    warnings: list[str] = field(default_factory=list)
    _idf: dict[str, float] | None = None

    def idf(self) -> dict[str, float] | None:
        if self.corpus is None:
            return None
        if self._idf is None:
            self._idf = lexical.idf_table(self.corpus)
        return self._idf


def is_available(measure: MeasureId, ctx: ScoringContext | None = None) -> bool:
    """Whether a measure can score pairs in this environment."""
    if measure is MeasureId.OUTPUT:
        return behavioral.toolchain_available()
    if measure is MeasureId.EMBEDDING:
        provider = ctx.provider if ctx and ctx.provider else EmbeddingProvider()
        return provider.available()
    return True


def score(
    measure: MeasureId, a: SourceUnit, b: SourceUnit, ctx: ScoringContext | None = None
) -> SimilarityScore:
    """Score one pair with one measure under the uniform contract."""
    ctx = ctx or ScoringContext()
    params = DESCRIPTORS[measure].params
    if measure is MeasureId.JACCARD:
        return lexical.sim_jaccard(a, b)
    if measure is MeasureId.LEVENSHTEIN:
        return lexical.sim_levenshtein(a, b)
    if measure is MeasureId.LCS:
        return lexical.sim_lcs(a, b)
    if measure is MeasureId.NGRAMS:
        return lexical.sim_ngrams(a, b, n=int(params["n"]))
    if measure is MeasureId.BOW:
        return lexical.sim_bow(a, b)
    if measure is MeasureId.TFIDF:
        return lexical.sim_tfidf(a, b, corpus=ctx.corpus, idf=ctx.idf())
    if measure is MeasureId.FUZZY:
        return lexical.sim_fuzzy(a, b)
    if measure is MeasureId.COMMENTS:
        return lexical.sim_comments(a, b)
    if measure is MeasureId.ROLLINGHASH:
        return fingerprint.sim_rollinghash(a, b, k=int(params["k"]))
    if measure is MeasureId.WINNOW:
        return fingerprint.sim_winnow(a, b, k=int(params["k"]), w=int(params["w"]))
    if measure is MeasureId.RKRGST:
        return fingerprint.sim_rkrgst(a, b, mml=int(params["mml"]))
    if measure is MeasureId.PHASH:
        return fingerprint.sim_phash(a, b)
    if measure is MeasureId.AST:
        return structural.sim_ast(a, b)
    if measure is MeasureId.GRAPH:
        return structural.sim_graph(a, b)
    if measure is MeasureId.PDG:
        return structural.sim_pdg(a, b)
    if measure is MeasureId.CALLS:
        return structural.sim_calls(a, b)
    if measure is MeasureId.METRICS:
        return structural.sim_metrics(a, b)
    if measure is MeasureId.SEMNAMES:
        return structural.sim_semnames(a, b)
    if measure is MeasureId.SEMDIFF:
        return structural.sim_semdiff(a, b)
    if measure is MeasureId.OUTPUT:
        return behavioral.sim_output(a, b, timeout_ms=ctx.timeout_ms, warnings=ctx.warnings)
    if measure is MeasureId.EMBEDDING:
        if ctx.provider is None:
            ctx.provider = EmbeddingProvider()
        return behavioral.sim_embedding(a, b, ctx.provider)
    raise ValueError(f"unknown measure {measure!r}")


__all__ = [
    "ALL_MEASURES",
    "DESCRIPTORS",
    "HEAVY_MEASURES",
    "EmbeddingProvider",
    "ScoringContext",
    "ToolchainMissing",
    "is_available",
    "score",
]
