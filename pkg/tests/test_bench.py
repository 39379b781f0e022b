import json

import pytest

from codesim import bench
from codesim.bench import (
    CSV_HEADER,
    EvalResult,
    LayoutError,
    SkippedMeasure,
    ThresholdPolicy,
    confusion_metrics,
    dataset_stats,
    emit_report,
    evaluate_measure,
    feasibility,
    generate_pairs,
    load_dataset,
    rank_measures,
    results_csv,
    results_json,
)
from codesim.core import MeasureId, SimilarityScore

APPROX = 1e-9


def test_load_fixture_dataset(fixture_dataset):
    d = load_dataset(str(fixture_dataset))
    assert len(d.tasks) == 1
    task = d.tasks[0]
    assert len(task.original) == 1
    assert len(task.plagiarized) == 2
    assert len(task.non_plagiarized) == 2


def test_load_dataset_empty_dir(tmp_path):
    with pytest.raises(LayoutError):
        load_dataset(str(tmp_path))


def test_load_dataset_missing_original(tmp_path):
    (tmp_path / "task1" / "plagiarized").mkdir(parents=True)
    with pytest.raises(LayoutError, match="task1"):
        load_dataset(str(tmp_path))


def test_dataset_stats_fixture(fixture_dataset):
    stats = dataset_stats(load_dataset(str(fixture_dataset)))
    assert stats.files == 5
    assert stats.plagiarized == 2
    assert stats.non_plagiarized == 2
    assert stats.min_tokens <= stats.mean_tokens <= stats.max_tokens


def test_dataset_stats_single_file(tmp_path):
    task = tmp_path / "t" / "original"
    task.mkdir(parents=True)
    (task / "A.java").write_text("int x = 1;")
    stats = dataset_stats(load_dataset(str(tmp_path)))
    assert stats.files == 1
    assert stats.mean_tokens == stats.min_tokens == stats.max_tokens


def test_generate_pairs_fixture(fixture_dataset):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    assert len(pairs) == 4
    assert sum(p.label == "clone" for p in pairs) == 2
    assert all(p.left.task_id == p.right.task_id for p in pairs)


def test_generate_pairs_no_candidates(tmp_path):
    task = tmp_path / "t" / "original"
    task.mkdir(parents=True)
    (task / "A.java").write_text("int x = 1;")
    assert generate_pairs(load_dataset(str(tmp_path))) == []


def test_confusion_metrics_arithmetic():
    m = confusion_metrics(3, 1, 2, 1)
    assert m["accuracy"] == pytest.approx(5 / 7, abs=APPROX)
    assert m["precision"] == pytest.approx(0.75, abs=APPROX)
    assert m["recall"] == pytest.approx(0.75, abs=APPROX)
    assert m["f1"] == pytest.approx(0.75, abs=APPROX)


def test_confusion_metrics_all_positive_baseline():
    m = confusion_metrics(355, 105, 0, 0)
    assert m["accuracy"] == pytest.approx(0.7717, abs=5e-5)
    assert m["precision"] == pytest.approx(0.7717, abs=5e-5)
    assert m["recall"] == 1.0
    assert m["f1"] == pytest.approx(0.8712, abs=1e-4)


def test_confusion_metrics_degenerate_conventions():
    m = confusion_metrics(0, 0, 10, 0)
    assert m["accuracy"] == 1.0
    assert m["precision"] == 0.0
    assert m["recall"] == 0.0
    assert m["f1"] == 0.0


def _constant_scorer(value):
    def scorer(measure, a, b, ctx=None):
        return SimilarityScore(value, measure)

    return scorer


def test_evaluate_constant_scorer_is_all_positive(fixture_dataset, monkeypatch):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    monkeypatch.setattr(bench, "score", _constant_scorer(1.0))
    r = evaluate_measure(MeasureId.JACCARD, pairs, ThresholdPolicy("fixed", 0.5))
    assert (r.tp, r.fp, r.tn, r.fn) == (2, 2, 0, 0)
    assert r.recall == 1.0
    assert r.accuracy == pytest.approx(0.5, abs=APPROX)


def test_evaluate_perfect_oracle_scorer(fixture_dataset, monkeypatch):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    truth = {(p.left.id, p.right.id): p.label == "clone" for p in pairs}

    def scorer(measure, a, b, ctx=None):
        return SimilarityScore(1.0 if truth[(a.id, b.id)] else 0.0, measure)

    monkeypatch.setattr(bench, "score", scorer)
    r = evaluate_measure(MeasureId.JACCARD, pairs, ThresholdPolicy("fixed", 0.5))
    assert r.accuracy == 1.0


def test_evaluate_sweep_picks_smallest_best_threshold(fixture_dataset, monkeypatch):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))

    def scorer(measure, a, b, ctx=None):
        is_clone = any(p.right.id == b.id and p.label == "clone" for p in pairs)
        return SimilarityScore(0.8 if is_clone else 0.4, measure)

    monkeypatch.setattr(bench, "score", scorer)
    r = evaluate_measure(MeasureId.JACCARD, pairs, ThresholdPolicy("sweep"))
    assert r.accuracy == 1.0
    assert r.threshold_used == pytest.approx(0.41, abs=APPROX)


def test_sweep_at_least_fixed_accuracy(fixture_dataset):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    for measure in (MeasureId.JACCARD, MeasureId.NGRAMS, MeasureId.METRICS):
        fixed = evaluate_measure(measure, pairs, ThresholdPolicy("fixed", 0.5))
        sweep = evaluate_measure(measure, pairs, ThresholdPolicy("sweep"))
        assert sweep.accuracy >= fixed.accuracy


def test_evaluate_counts_sum_to_pairs(fixture_dataset):
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    r = evaluate_measure(MeasureId.WINNOW, pairs, ThresholdPolicy("fixed", 0.5))
    assert r.tp + r.fp + r.tn + r.fn == len(pairs)


def test_evaluate_skips_unavailable_measure(fixture_dataset, monkeypatch):
    monkeypatch.setenv("PATH", "/nonexistent")
    monkeypatch.delenv("CODESIM_JAVA_HOME", raising=False)
    pairs = generate_pairs(load_dataset(str(fixture_dataset)))
    with pytest.raises(SkippedMeasure):
        evaluate_measure(MeasureId.OUTPUT, pairs, ThresholdPolicy("fixed", 0.5))


def test_feasibility_formula():
    assert feasibility(0.8, 1.0) == pytest.approx(4.0, abs=APPROX)
    assert feasibility(0.0, 5.0) == 0.0


def test_feasibility_monotone():
    assert feasibility(0.9, 0.5) > feasibility(0.9, 2.0)
    assert feasibility(0.9, 1.0) > feasibility(0.5, 1.0)


def _result(measure, accuracy=0.5, time_s=1.0):
    return EvalResult(
        measure=measure, tp=1, fp=1, tn=1, fn=1, accuracy=accuracy, precision=0.5,
        recall=0.5, f1=0.5, threshold_used=0.5, wall_time_s=time_s,
        feasibility=feasibility(accuracy, time_s), warnings=0,
    )


def test_rank_measures_tie_broken_by_id():
    results = [_result(MeasureId.WINNOW), _result(MeasureId.JACCARD)]
    rankings = rank_measures(results)
    assert [m for m, _ in rankings.by_feasibility] == ["jaccard", "winnow"]


def test_rank_measures_singleton():
    rankings = rank_measures([_result(MeasureId.BOW)])
    assert rankings.by_accuracy == (("bow", 0.5),)


def test_rank_measures_accuracy_order():
    results = [_result(MeasureId.BOW, accuracy=0.4), _result(MeasureId.AST, accuracy=0.9)]
    assert rank_measures(results).by_accuracy[0][0] == "ast"


def test_results_csv_header_and_rows():
    assert results_csv([]).strip() == CSV_HEADER
    out = results_csv([_result(MeasureId.JACCARD)])
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines[1].split(",")) == 9


def test_csv_round_trips_to_six_significant_digits():
    r = _result(MeasureId.JACCARD, accuracy=0.123456789, time_s=3.14159265)
    row = results_csv([r]).strip().split("\n")[1].split(",")
    assert float(row[2]) == pytest.approx(r.accuracy, rel=1e-5)
    assert float(row[6]) == pytest.approx(r.wall_time_s, rel=1e-5)


def test_json_round_trip():
    r = _result(MeasureId.JACCARD)
    payload = json.loads(results_json([r]))
    row = payload["results"][0]
    assert row["measure"] == "jaccard"
    assert row["accuracy"] == r.accuracy
    assert row["wall_time_s"] == r.wall_time_s
    assert "timestamp" in payload["meta"]


def test_json_stable_mode_excludes_volatile_fields():
    r = _result(MeasureId.JACCARD)
    payload = json.loads(results_json([r], timestamp=False))
    assert "timestamp" not in payload["meta"]
    row = payload["results"][0]
    assert row["wall_time_s"] is None and row["feasibility"] is None
    assert results_json([r], timestamp=False) == results_json([r], timestamp=False)


def test_emit_report_files(tmp_path):
    written = emit_report([_result(MeasureId.JACCARD)], str(tmp_path), timestamp=False)
    names = {p.split("/")[-1] for p in written}
    assert names == {"report.json", "report.csv", "ranking_accuracy.dat", "ranking_time.dat", "ranking_feasibility.dat"}
    dat = (tmp_path / "ranking_accuracy.dat").read_text().strip().split("\t")
    assert len(dat) == 2


def test_threshold_policy_parse():
    assert ThresholdPolicy.parse("sweep").mode == "sweep"
    assert ThresholdPolicy.parse("fixed:0.7").threshold == pytest.approx(0.7)
    with pytest.raises(ValueError):
        ThresholdPolicy.parse("nonsense")
    with pytest.raises(ValueError):
        ThresholdPolicy("fixed", 1.5)
