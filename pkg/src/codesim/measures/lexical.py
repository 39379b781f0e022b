"""Token- and text-level similarity measures.

Jaccard, Levenshtein, LCS, N-grams, Bag-of-Words, TF-IDF, Fuzzy
Matching, and Comments similarity. All scorers are pure functions
SourceUnit x SourceUnit -> SimilarityScore.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Hashable, Sequence

from codesim.core import MeasureId, SimilarityScore, SourceUnit
from codesim.lexsrc import extract_comments, tokenize


def levenshtein_distance(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Unit-cost edit distance (insert/delete/substitute) between sequences."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        cur = [i]
        for j, y in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def levenshtein_similarity(a: Sequence[Hashable], b: Sequence[Hashable]) -> float:
    """1 - D/max(|a|,|b|); two empty sequences count as identical."""
    if not a and not b:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / max(len(a), len(b))


def lcs_length(a: Sequence[Hashable], b: Sequence[Hashable]) -> int:
    """Longest common subsequence length between sequences."""
    if len(a) < len(b):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def cosine(u: Counter, v: Counter) -> float:
    """Cosine similarity of sparse count/weight vectors.

    Zero vector against anything is 0.0 except the zero/zero pair (1.0).
    """
    if u == v:
        # Exact identity: skip the norms so rounding cannot yield 1 - eps.
        return 1.0
    nu = math.sqrt(sum(x * x for x in u.values()))
    nv = math.sqrt(sum(x * x for x in v.values()))
    if nu == 0.0 and nv == 0.0:
        return 1.0
    if nu == 0.0 or nv == 0.0:
        return 0.0
    dot = sum(u[t] * v[t] for t in (u.keys() & v.keys()))
    return dot / (nu * nv)


def jaccard(sa: set, sb: set) -> float:
    """Set Jaccard; two empty sets count as identical."""
    if not sa and not sb:
        return 1.0
    return len(sa & sb) / len(sa | sb)


def token_ngrams(lexemes: Sequence[str], n: int) -> set[tuple[str, ...]]:
    """Set of contiguous n-grams; a short stream yields itself as one gram."""
    if not lexemes:
        return set()
    if len(lexemes) < n:
        return {tuple(lexemes)}
    return {tuple(lexemes[i : i + n]) for i in range(len(lexemes) - n + 1)}


def sim_jaccard(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    value = jaccard(set(tokenize(a.text).lexemes()), set(tokenize(b.text).lexemes()))
    return SimilarityScore(value, MeasureId.JACCARD)


def sim_levenshtein(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    value = levenshtein_similarity(tokenize(a.text).lexemes(), tokenize(b.text).lexemes())
    return SimilarityScore(value, MeasureId.LEVENSHTEIN)


def sim_lcs(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    ta, tb = tokenize(a.text).lexemes(), tokenize(b.text).lexemes()
    if not ta and not tb:
        return SimilarityScore(1.0, MeasureId.LCS)
    value = 2.0 * lcs_length(ta, tb) / (len(ta) + len(tb))
    return SimilarityScore(value, MeasureId.LCS)


def sim_ngrams(a: SourceUnit, b: SourceUnit, n: int = 3) -> SimilarityScore:
    ga = token_ngrams(tokenize(a.text).lexemes(), n)
    gb = token_ngrams(tokenize(b.text).lexemes(), n)
    return SimilarityScore(jaccard(ga, gb), MeasureId.NGRAMS)


def sim_bow(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    va = Counter(tokenize(a.text).lexemes())
    vb = Counter(tokenize(b.text).lexemes())
    return SimilarityScore(cosine(va, vb), MeasureId.BOW)


def idf_table(corpus: Sequence[SourceUnit]) -> dict[str, float]:
    """Smoothed inverse document frequencies: ln((1+N)/(1+df)) + 1."""
    n = len(corpus)
    df: Counter = Counter()
    for unit in corpus:
        df.update(set(tokenize(unit.text).lexemes()))
    return {term: math.log((1 + n) / (1 + d)) + 1.0 for term, d in df.items()}


def sim_tfidf(
    a: SourceUnit,
    b: SourceUnit,
    corpus: Sequence[SourceUnit] | None = None,
    idf: dict[str, float] | None = None,
) -> SimilarityScore:
    """Cosine of TF-IDF vectors; pairwise use falls back to the {a, b} corpus."""
    ta, tb = tokenize(a.text).lexemes(), tokenize(b.text).lexemes()
    if ta == tb:
        return SimilarityScore(1.0, MeasureId.TFIDF)
    if idf is None:
        idf = idf_table(corpus if corpus is not None else [a, b])
    default = math.log(1 + len(corpus or [a, b])) + 1.0  # unseen-term fallback
    va = Counter({t: c * idf.get(t, default) for t, c in Counter(ta).items()})
    vb = Counter({t: c * idf.get(t, default) for t, c in Counter(tb).items()})
    return SimilarityScore(cosine(va, vb), MeasureId.TFIDF)


def sim_fuzzy(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Token-sort ratio: char Levenshtein over sorted, space-joined lexemes."""
    ja = " ".join(sorted(tokenize(a.text).lexemes()))
    jb = " ".join(sorted(tokenize(b.text).lexemes()))
    return SimilarityScore(levenshtein_similarity(ja, jb), MeasureId.FUZZY)


def sim_comments(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    """Char Levenshtein over concatenated comment text.

    Two comment-free files compare as identical (score 1.0); exactly
    one comment-free file scores 0.0.
    """
    ca = "\n".join(c.text for c in extract_comments(a.text))
    cb = "\n".join(c.text for c in extract_comments(b.text))
    if not ca and not cb:
        return SimilarityScore(1.0, MeasureId.COMMENTS)
    if not ca or not cb:
        return SimilarityScore(0.0, MeasureId.COMMENTS)
    return SimilarityScore(levenshtein_similarity(ca, cb), MeasureId.COMMENTS)
