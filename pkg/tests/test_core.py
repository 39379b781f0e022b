import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from codesim.core import (
    InvalidScore,
    InvalidThreshold,
    MeasureId,
    SimilarityScore,
    SourceUnit,
    clamp,
    classify,
)


def test_clamp_upper_bound():
    assert clamp(1.3) == 1.0


def test_clamp_lower_bound():
    assert clamp(-0.2) == 0.0


def test_clamp_identity_inside_range():
    assert clamp(0.42) == 0.42


@pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
def test_clamp_rejects_non_finite(bad):
    with pytest.raises(InvalidScore):
        clamp(bad)


def test_classify_above_threshold():
    s = SimilarityScore(0.80, MeasureId.JACCARD)
    assert classify(s, 0.50).is_clone is True


def test_classify_boundary_inclusive():
    s = SimilarityScore(0.50, MeasureId.JACCARD)
    assert classify(s, 0.50).is_clone is True


def test_classify_below_threshold():
    s = SimilarityScore(0.49, MeasureId.JACCARD)
    assert classify(s, 0.50).is_clone is False


@pytest.mark.parametrize("bad", [-0.1, 1.1])
def test_classify_rejects_bad_threshold(bad):
    with pytest.raises(InvalidThreshold):
        classify(SimilarityScore(0.5, MeasureId.JACCARD), bad)


def test_score_clamped_at_construction():
    assert SimilarityScore(2.0, MeasureId.BOW).value == 1.0
    assert SimilarityScore(-1.0, MeasureId.BOW).value == 0.0
    with pytest.raises(InvalidScore):
        SimilarityScore(math.nan, MeasureId.BOW)


def test_source_unit_requires_text():
    with pytest.raises(ValueError):
        SourceUnit(id="x", path="x", text="")


def test_measure_id_is_closed_set_of_21():
    assert len(MeasureId) == 21
    assert {m.value for m in MeasureId} == {
        "ast", "bow", "embedding", "comments", "fuzzy", "calls", "graph",
        "jaccard", "levenshtein", "lcs", "metrics", "ngrams", "output",
        "phash", "pdg", "rkrgst", "rollinghash", "semdiff", "semnames",
        "tfidf", "winnow",
    }


@given(
    value=st.floats(0, 1),
    threshold=st.floats(0, 1),
    bump=st.floats(0, 1),
)
def test_classify_monotone(value, threshold, bump):
    lo = classify(SimilarityScore(value, MeasureId.JACCARD), threshold)
    hi = classify(SimilarityScore(min(1.0, value + bump), MeasureId.JACCARD), threshold)
    assert not (lo.is_clone and not hi.is_clone)


@given(value=st.floats(0, 1))
def test_classify_zero_threshold_always_clone(value):
    assert classify(SimilarityScore(value, MeasureId.JACCARD), 0.0).is_clone


@given(value=st.floats(0, 1), threshold=st.floats(0, 1))
def test_classify_below_always_non_clone(value, threshold):
    verdict = classify(SimilarityScore(value, MeasureId.JACCARD), threshold)
    if verdict.score.value < threshold:
        assert not verdict.is_clone
