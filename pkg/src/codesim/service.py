"""FastAPI service exposing the scoring and benchmark surfaces.

The CLI is a thin client of this app (in-process by default, over HTTP
against a deployed instance otherwise).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from codesim import bench
from codesim.core import MeasureId
from codesim.measures import ALL_MEASURES, DESCRIPTORS, HEAVY_MEASURES, ScoringContext, is_available, score
from codesim.core import SourceUnit


class MeasureInfo(BaseModel):
    id: str
    display_name: str
    params: dict[str, float | int | str]
    cost_class: str
    available: bool


class CompareRequest(BaseModel):
    text_a: str = Field(min_length=1)
    text_b: str = Field(min_length=1)
    name_a: str = "a"
    name_b: str = "b"
    measures: list[str] | None = None


class MeasureScore(BaseModel):
    measure: str
    score: float | None
    skipped: bool = False


class CompareResponse(BaseModel):
    scores: list[MeasureScore]


class StatsRequest(BaseModel):
    root: str


class StatsResponse(BaseModel):
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


class BenchRequest(BaseModel):
    root: str
    measures: list[str] | None = None
    threshold_policy: str = "fixed:0.5"
    timing: str = "sequential"
    workers: int = 4
    timeout_ms: int = 5000
    out_dir: str | None = None
    formats: list[str] = ["json", "csv", "plotdata"]
    timestamp: bool = True
    seed: int = 42


class BenchResult(BaseModel):
    measure: str
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


class RankingEntry(BaseModel):
    measure: str
    value: float


class BenchResponse(BaseModel):
    results: list[BenchResult]
    skipped: list[str]
    by_accuracy: list[RankingEntry]
    by_time: list[RankingEntry]
    by_feasibility: list[RankingEntry]
    written: list[str]
    pair_count: int
    positive_rate: float


def _resolve_measures(names: list[str] | None) -> list[MeasureId]:
    if not names or names == ["all"]:
        return list(ALL_MEASURES)
    out = []
    for name in names:
        try:
            out.append(MeasureId(name))
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown measure {name!r}")
    return out


def create_app() -> FastAPI:
    app = FastAPI(title="codesim", description="Source-code similarity scoring service")

    @app.get("/measures", response_model=list[MeasureInfo])
    def measures() -> list[MeasureInfo]:
        return [
            MeasureInfo(
                id=m.value,
                display_name=DESCRIPTORS[m].display_name,
                params=DESCRIPTORS[m].params,
                cost_class=DESCRIPTORS[m].cost_class.value,
                available=is_available(m),
            )
            for m in ALL_MEASURES
        ]

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest) -> CompareResponse:
        unit_a = SourceUnit(id=req.name_a, path=req.name_a, text=req.text_a)
        unit_b = SourceUnit(id=req.name_b, path=req.name_b, text=req.text_b)
        ctx = ScoringContext()
        rows = []
        for m in _resolve_measures(req.measures):
            if not is_available(m, ctx):
                rows.append(MeasureScore(measure=m.value, score=None, skipped=True))
                continue
            rows.append(MeasureScore(measure=m.value, score=score(m, unit_a, unit_b, ctx).value))
        return CompareResponse(scores=rows)

    @app.post("/stats", response_model=StatsResponse)
    def stats(req: StatsRequest) -> StatsResponse:
        try:
            dataset = bench.load_dataset(req.root)
        except bench.LayoutError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return StatsResponse(**bench.dataset_stats(dataset).__dict__)

    @app.post("/bench", response_model=BenchResponse)
    def run_bench(req: BenchRequest) -> BenchResponse:
        try:
            dataset = bench.load_dataset(req.root)
        except bench.LayoutError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        policy = bench.ThresholdPolicy.parse(req.threshold_policy)
        pairs = bench.generate_pairs(dataset)
        ctx = ScoringContext(corpus=dataset.units(), timeout_ms=req.timeout_ms)
        results: list[bench.EvalResult] = []
        skipped: list[str] = []
        for m in _resolve_measures(req.measures):
            try:
                results.append(
                    bench.evaluate_measure(
                        m, pairs, policy, ctx, timing=req.timing, workers=req.workers
                    )
                )
            except bench.SkippedMeasure:
                skipped.append(m.value)
        rankings = bench.rank_measures(results)
        written: list[str] = []
        if req.out_dir:
            meta = {
                "dataset_root": req.root,
                "policy": req.threshold_policy,
                "timing": req.timing,
                "seed": req.seed,
                "pair_count": len(pairs),
            }
            written = bench.emit_report(
                results,
                req.out_dir,
                formats=tuple(req.formats),
                skipped=skipped,
                meta=meta,
                timestamp=req.timestamp,
            )
        positives = sum(1 for p in pairs if p.label == "clone")
        return BenchResponse(
            results=[BenchResult(**{**r.__dict__, "measure": r.measure.value}) for r in results],
            skipped=skipped,
            by_accuracy=[RankingEntry(measure=m, value=v) for m, v in rankings.by_accuracy],
            by_time=[RankingEntry(measure=m, value=v) for m, v in rankings.by_time],
            by_feasibility=[RankingEntry(measure=m, value=v) for m, v in rankings.by_feasibility],
            written=written,
            pair_count=len(pairs),
            positive_rate=positives / len(pairs) if pairs else 0.0,
        )

    return app


app = create_app()
