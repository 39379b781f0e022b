"""Benchmark harness: dataset ingestion, labeled pairs, per-measure
evaluation, threshold policies, feasibility ranking and report emission."""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from codesim import lexsrc
from codesim.core import MeasureId, SimilarityScore, SourceUnit
from codesim.measures import DESCRIPTORS, ScoringContext, is_available, score

SOURCE_EXTENSIONS = (".java",)
SWEEP_GRID = tuple(round(0.01 * i, 2) for i in range(1, 100))

CSV_HEADER = "measure,threshold,accuracy,precision,recall,f1,time_s,feasibility,warnings"


class LayoutError(ValueError):
    """The dataset directory does not follow the expected task layout."""


class SkippedMeasure(RuntimeError):
    """The measure cannot run in this environment (toolchain/provider absent)."""


@dataclass(frozen=True)
class Task:
    task_id: str
    original: tuple[SourceUnit, ...]
    plagiarized: tuple[SourceUnit, ...]
    non_plagiarized: tuple[SourceUnit, ...]


@dataclass(frozen=True)
class Dataset:
    tasks: tuple[Task, ...]

    def units(self) -> list[SourceUnit]:
        out: list[SourceUnit] = []
        for t in self.tasks:
            out.extend(t.original)
            out.extend(t.plagiarized)
            out.extend(t.non_plagiarized)
        return out


@dataclass(frozen=True)
class LabeledPair:
    left: SourceUnit
    right: SourceUnit
    label: str  # "clone" | "non_clone"


@dataclass(frozen=True)
class ThresholdPolicy:
    mode: str  # "fixed" | "sweep"
    threshold: float = 0.5

    def __post_init__(self) -> None:
        if self.mode not in ("fixed", "sweep"):
            raise ValueError(f"unknown policy mode {self.mode!r}")
        if self.mode == "fixed" and not (0.0 <= self.threshold <= 1.0):
            raise ValueError(f"fixed threshold out of range: {self.threshold}")

    @classmethod
    def parse(cls, text: str) -> "ThresholdPolicy":
        """Parse `sweep` or `fixed:<t>`."""
        if text == "sweep":
            return cls("sweep")
        if text.startswith("fixed:"):
            return cls("fixed", float(text.split(":", 1)[1]))
        raise ValueError(f"bad threshold policy {text!r}")


@dataclass(frozen=True)
class EvalResult:
    measure: MeasureId
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    threshold_used: float
    wall_time_s: float
    feasibility: float
    warnings: int


@dataclass(frozen=True)
class DatasetStats:
    tasks: int
    files: int
    plagiarized: int
    non_plagiarized: int
    originals: int
    total_tokens: int
    distinct_tokens: int
    min_tokens: int
    max_tokens: int
    mean_tokens: float


def _read_unit(path: str, root: str, task_id: str) -> SourceUnit:
    with open(path, "rb") as fh:
        text = fh.read().decode("utf-8", errors="replace")
    rel = os.path.relpath(path, root)
    ts = lexsrc.tokenize(text)
    return SourceUnit(id=rel, path=path, text=text, task_id=task_id, token_count=len(ts))


def _collect(task_dir: str, root: str, task_id: str, segment: str) -> tuple[SourceUnit, ...]:
    base = os.path.join(task_dir, segment)
    units = []
    if os.path.isdir(base):
        for dirpath, dirnames, filenames in os.walk(base):
            dirnames.sort()
            for name in sorted(filenames):
                if name.lower().endswith(SOURCE_EXTENSIONS):
                    units.append(_read_unit(os.path.join(dirpath, name), root, task_id))
    return tuple(units)


def load_dataset(root: str) -> Dataset:
    """Load an IR-Plag-shaped layout: <task>/{original,plagiarized,non-plagiarized}/**."""
    if not os.path.isdir(root):
        raise LayoutError(f"dataset root {root!r} does not exist")
    tasks = []
    for entry in sorted(os.listdir(root)):
        task_dir = os.path.join(root, entry)
        if not os.path.isdir(task_dir):
            continue
        original = _collect(task_dir, root, entry, "original")
        if not original:
            raise LayoutError(f"task {entry!r} has no original/ files")
        tasks.append(
            Task(
                task_id=entry,
                original=original,
                plagiarized=_collect(task_dir, root, entry, "plagiarized"),
                non_plagiarized=_collect(task_dir, root, entry, "non-plagiarized"),
            )
        )
    if not tasks:
        raise LayoutError(f"no task directories under {root!r}")
    return Dataset(tuple(tasks))


def dataset_stats(d: Dataset) -> DatasetStats:
    units = d.units()
    counts = [u.token_count for u in units]
    distinct: set[str] = set()
    for u in units:
        distinct.update(lexsrc.tokenize(u.text).lexemes())
    return DatasetStats(
        tasks=len(d.tasks),
        files=len(units),
        plagiarized=sum(len(t.plagiarized) for t in d.tasks),
        non_plagiarized=sum(len(t.non_plagiarized) for t in d.tasks),
        originals=sum(len(t.original) for t in d.tasks),
        total_tokens=sum(counts),
        distinct_tokens=len(distinct),
        min_tokens=min(counts),
        max_tokens=max(counts),
        mean_tokens=sum(counts) / len(counts),
    )


def generate_pairs(d: Dataset) -> list[LabeledPair]:
    """Pair every candidate with its task's (first) original file."""
    pairs: list[LabeledPair] = []
    for task in d.tasks:
        original = task.original[0]
        for unit in task.plagiarized:
            pairs.append(LabeledPair(original, unit, "clone"))
        for unit in task.non_plagiarized:
            pairs.append(LabeledPair(original, unit, "non_clone"))
    pairs.sort(key=lambda p: (p.left.task_id or "", p.right.id))
    return pairs


def confusion_metrics(tp: int, fp: int, tn: int, fn: int) -> dict[str, float]:
    total = tp + fp + tn + fn
    if total == 0:
        raise ValueError("empty confusion matrix")
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {
        "accuracy": (tp + tn) / total,
        "precision": precision,
        "recall": recall,
        "f1": f1,
    }


def feasibility(accuracy: float, wall_time_s: float) -> float:
    """Accuracy-over-time index, 10:1 weighting, +1 s floor on the time."""
    if not (0.0 <= accuracy <= 1.0) or wall_time_s < 0:
        raise ValueError("accuracy must be in [0,1] and time non-negative")
    return 10.0 * accuracy / (wall_time_s + 1.0)


def _confusion_at(scores: list[float], labels: list[bool], t: float) -> tuple[int, int, int, int]:
    tp = fp = tn = fn = 0
    for s, is_clone in zip(scores, labels):
        predicted = s >= t
        if predicted and is_clone:
            tp += 1
        elif predicted:
            fp += 1
        elif is_clone:
            fn += 1
        else:
            tn += 1
    return tp, fp, tn, fn


def score_pairs(
    measure: MeasureId,
    pairs: list[LabeledPair],
    ctx: ScoringContext,
    timing: str = "sequential",
    workers: int = 4,
) -> tuple[list[float], float]:
    """Score all pairs once, returning values and the scoring wall time."""
    lexsrc.clear_caches()  # honest per-measure cost: no warm cache carryover
    start = time.perf_counter()
    if timing == "parallel":
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda p: score(measure, p.left, p.right, ctx).value, pairs))
    else:
        values = [score(measure, p.left, p.right, ctx).value for p in pairs]
    return values, time.perf_counter() - start


def evaluate_measure(
    measure: MeasureId,
    pairs: list[LabeledPair],
    policy: ThresholdPolicy,
    ctx: ScoringContext | None = None,
    timing: str = "sequential",
    workers: int = 4,
) -> EvalResult:
    ctx = ctx or ScoringContext()
    if not is_available(measure, ctx):
        raise SkippedMeasure(f"measure {measure.value} unavailable in this environment")
    base_warnings = len(ctx.warnings)
    values, wall = score_pairs(measure, pairs, ctx, timing=timing, workers=workers)
    labels = [p.label == "clone" for p in pairs]
    if policy.mode == "fixed":
        threshold = policy.threshold
    else:
        best = None
        for t in SWEEP_GRID:
            tp, fp, tn, fn = _confusion_at(values, labels, t)
            acc = (tp + tn) / len(pairs)
            if best is None or acc > best[0]:
                best = (acc, t)
        assert best is not None
        threshold = best[1]
    tp, fp, tn, fn = _confusion_at(values, labels, threshold)
    metrics = confusion_metrics(tp, fp, tn, fn)
    return EvalResult(
        measure=measure,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        threshold_used=threshold,
        wall_time_s=wall,
        feasibility=feasibility(metrics["accuracy"], wall),
        warnings=len(ctx.warnings) - base_warnings,
        **metrics,
    )


@dataclass(frozen=True)
class Rankings:
    by_accuracy: tuple[tuple[str, float], ...]
    by_time: tuple[tuple[str, float], ...]
    by_feasibility: tuple[tuple[str, float], ...]


def rank_measures(results: list[EvalResult]) -> Rankings:
    """Accuracy (desc), wall time (asc), feasibility (desc); ties by id."""
    return Rankings(
        by_accuracy=tuple(
            (r.measure.value, r.accuracy)
            for r in sorted(results, key=lambda r: (-r.accuracy, r.measure.value))
        ),
        by_time=tuple(
            (r.measure.value, r.wall_time_s)
            for r in sorted(results, key=lambda r: (r.wall_time_s, r.measure.value))
        ),
        by_feasibility=tuple(
            (r.measure.value, r.feasibility)
            for r in sorted(results, key=lambda r: (-r.feasibility, r.measure.value))
        ),
    )


def results_csv(results: list[EvalResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in results:
        writer.writerow(
            [
                r.measure.value,
                f"{r.threshold_used:.6g}",
                f"{r.accuracy:.6g}",
                f"{r.precision:.6g}",
                f"{r.recall:.6g}",
                f"{r.f1:.6g}",
                f"{r.wall_time_s:.6g}",
                f"{r.feasibility:.6g}",
                r.warnings,
            ]
        )
    return buf.getvalue()


def results_json(
    results: list[EvalResult],
    skipped: list[str] | None = None,
    meta: dict | None = None,
    timestamp: bool = True,
) -> str:
    """Deterministic JSON report.

    With timestamp=False the report is byte-stable across identical runs:
    the timestamp and the measured-time fields (wall_time_s, feasibility)
    are excluded, since wall time varies run to run.
    """
    rows = []
    for r in sorted(results, key=lambda r: r.measure.value):
        row = {**asdict(r), "measure": r.measure.value}
        if not timestamp:
            row["wall_time_s"] = None
            row["feasibility"] = None
        rows.append(row)
    payload = {
        "meta": dict(meta or {}),
        "measure_params": {
            m.value: {"display_name": d.display_name, "params": d.params, "cost_class": d.cost_class.value}
            for m, d in sorted(DESCRIPTORS.items(), key=lambda kv: kv[0].value)
        },
        "results": rows,
        "skipped": sorted(skipped or []),
    }
    if timestamp:
        payload["meta"]["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S")
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit_report(
    results: list[EvalResult],
    out_dir: str,
    formats: tuple[str, ...] = ("json", "csv", "plotdata"),
    skipped: list[str] | None = None,
    meta: dict | None = None,
    timestamp: bool = True,
) -> list[str]:
    """Write report files under out_dir; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if "json" in formats:
        path = os.path.join(out_dir, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(results_json(results, skipped=skipped, meta=meta, timestamp=timestamp))
        written.append(path)
    if "csv" in formats:
        path = os.path.join(out_dir, "report.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(results_csv(results))
        written.append(path)
    if "plotdata" in formats:
        rankings = rank_measures(results)
        for name, rows in (
            ("accuracy", rankings.by_accuracy),
            ("time", rankings.by_time),
            ("feasibility", rankings.by_feasibility),
        ):
            path = os.path.join(out_dir, f"ranking_{name}.dat")
            with open(path, "w", encoding="utf-8") as fh:
                for measure, value in rows:
                    fh.write(f"{measure}\t{value:.6g}\n")
            written.append(path)
    return written
