"""Metrics, threshold tuning, ablation modes, and benchmark CSV emission.

Retrieval latency is wall-clock around retrieval only (featurize + search +
fuse); generation time is excluded. Accuracy denominators skip queries
without gold answers, and recall denominators skip queries without gold
passage ids.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

from .corpus import Query
from .errors import (
    EmptyDenominatorError,
    EmptyRecordSetError,
    EmptyValidationError,
)
from .generation import ContainMatchJudge, Judge, contain_match
from .pipeline import Pipeline
from .router import RetrievalPath, RRFConfig, Thresholds, route, weighted_rrf


@dataclass
class RunRecord:
    query_id: str
    path: str
    s: float | None
    evidence_ids: tuple[str, ...]
    answer: str
    gold_answers: tuple[str, ...]
    gold_passage_ids: tuple[str, ...]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def retrieval_ms(self) -> float:
        return sum(self.timings.get(k, 0.0) for k in
                   ("featurize_ms", "dense_ms", "graph_ms", "fuse_ms"))


@dataclass(frozen=True)
class TuneConfig:
    grid_step: float = 0.05
    lambda_latency: float = 0.1
    K: int = 5


@dataclass(frozen=True)
class TuneRecord:
    """One validation query scored under all three paths."""

    s: float
    correct: dict  # path value -> {0,1}
    latency_ms: dict  # path value -> float


def recall_at_k(records: list[RunRecord], k: int) -> float:
    """Fraction of gold-bearing queries with a gold passage in the top k."""
    eligible = [r for r in records if r.gold_passage_ids]
    if not eligible:
        raise EmptyDenominatorError("no queries carry gold passage ids")
    if k <= 0:
        return 0.0
    hits = sum(
        1 for r in eligible
        if set(r.evidence_ids[:k]) & set(r.gold_passage_ids)
    )
    return hits / len(eligible)


def grid_values(step: float) -> list[float]:
    n = round(1.0 / step)
    if abs(n * step - 1.0) > 1e-9:
        raise ValueError("grid_step must divide 1.0")
    return [i * step for i in range(n + 1)]


def tune_thresholds(records: list[TuneRecord], cfg: TuneConfig) -> Thresholds:
    """Exhaustive grid search for the thresholds maximizing
    J = accuracy - lambda * (mean latency / graph-path mean latency).

    Ties prefer the smaller high threshold, then the larger low threshold,
    biasing the router toward the cheaper paths.
    """
    if not records:
        raise EmptyValidationError("no validation records")
    values = grid_values(cfg.grid_step)
    graph_mean = sum(r.latency_ms[RetrievalPath.GRAPH.value] for r in records) / len(records)
    graph_mean = max(graph_mean, 1e-12)

    best: tuple[float, float, float] | None = None  # (J, tau_high, -tau_low)
    best_pair: tuple[float, float] | None = None
    for lo in values:
        for hi in values:
            if not lo < hi:
                continue
            acc = 0.0
            lat = 0.0
            for r in records:
                path = route(r.s, Thresholds(lo, hi)).path.value
                acc += r.correct[path]
                lat += r.latency_ms[path]
            acc /= len(records)
            lat /= len(records)
            j = acc - cfg.lambda_latency * (lat / graph_mean)
            key = (-j, hi, -lo)
            if best is None or key < best:
                best = key
                best_pair = (lo, hi)
    assert best_pair is not None
    return Thresholds(tau_low=best_pair[0], tau_high=best_pair[1])


def objective(records: list[TuneRecord], thresholds: Thresholds,
              lambda_latency: float) -> float:
    """J for one threshold pair (shared by the tuner and its tests)."""
    graph_mean = sum(r.latency_ms[RetrievalPath.GRAPH.value] for r in records) / len(records)
    graph_mean = max(graph_mean, 1e-12)
    acc = sum(r.correct[route(r.s, thresholds).path.value] for r in records) / len(records)
    lat = sum(r.latency_ms[route(r.s, thresholds).path.value] for r in records) / len(records)
    return acc - lambda_latency * (lat / graph_mean)


def build_tune_records(pipeline: Pipeline, queries: list[Query]) -> list[TuneRecord]:
    """Score every validation query under all three paths.

    Fusion reuses the query's own complexity score for the rank weights; its
    latency is the dense and graph costs plus the merge itself.
    """
    import time

    from .corpus import pack_context

    records = []
    for query in queries:
        pq = pipeline.parse_for(query)
        s = pipeline.score_query(pq)
        t0 = time.perf_counter()
        dense = pipeline.dense_list(query.text)
        dense_ms = (time.perf_counter() - t0) * 1e3
        t0 = time.perf_counter()
        graph = pipeline.graph_list(query.text)
        graph_ms = (time.perf_counter() - t0) * 1e3
        t0 = time.perf_counter()
        fused = weighted_rrf(dense, graph, s,
                             RRFConfig(k_smooth=pipeline.config.k_smooth),
                             pipeline.config.k)
        fuse_ms = (time.perf_counter() - t0) * 1e3

        correct = {}
        for path, ranked in ((RetrievalPath.DENSE, dense),
                             (RetrievalPath.GRAPH, graph),
                             (RetrievalPath.FUSION, fused)):
            context = pack_context(pipeline.corpus, ranked, pipeline.config.k,
                                   pipeline.config.max_context_chars)
            answer = pipeline.generator.generate(query.text, context)
            correct[path.value] = contain_match(answer, query.gold_answers)
        records.append(TuneRecord(
            s=s,
            correct=correct,
            latency_ms={RetrievalPath.DENSE.value: dense_ms,
                        RetrievalPath.GRAPH.value: graph_ms,
                        RetrievalPath.FUSION.value: dense_ms + graph_ms + fuse_ms}))
    return records


class AblationMode(str, enum.Enum):
    GENERATOR_ONLY = "GENERATOR_ONLY"
    DENSE_ONLY = "DENSE_ONLY"
    GRAPH_ONLY = "GRAPH_ONLY"
    ROUTED_NO_FUSION = "ROUTED_NO_FUSION"
    FULL = "FULL"


@dataclass
class MetricsReport:
    n_queries: int
    acc: float | None
    judge_acc: float | None
    r_at_3: float | None
    r_at_5: float | None
    mean_retrieval_ms: float
    mean_retrieval_ms_by_path: dict
    path_counts: dict

    def summary(self) -> str:
        def fmt(v):
            return "n/a" if v is None else f"{v:.3f}"

        lines = [
            f"queries:          {self.n_queries}",
            f"acc (contain):    {fmt(self.acc)}",
            f"acc (judge):      {fmt(self.judge_acc)}",
            f"recall@3:         {fmt(self.r_at_3)}",
            f"recall@5:         {fmt(self.r_at_5)}",
            f"mean retrieval:   {self.mean_retrieval_ms:.2f} ms",
        ]
        for path, ms in sorted(self.mean_retrieval_ms_by_path.items()):
            lines.append(f"  {path.lower():8s} {ms:10.2f} ms x {self.path_counts.get(path, 0)}")
        return "\n".join(lines)

    def to_row(self) -> dict:
        return {
            "n_queries": self.n_queries,
            "acc": self.acc,
            "judge_acc": self.judge_acc,
            "r_at_3": self.r_at_3,
            "r_at_5": self.r_at_5,
            "mean_retrieval_ms": self.mean_retrieval_ms,
            **{f"n_{p.lower()}": c for p, c in sorted(self.path_counts.items())},
        }


def evaluate_run(records: list[RunRecord], judge: Judge | None = None) -> MetricsReport:
    """Aggregate accuracy, recall, latency, and path distribution."""
    if not records:
        raise EmptyRecordSetError("no run records to evaluate")
    judge = judge or ContainMatchJudge()

    with_answers = [r for r in records if r.gold_answers]
    acc = judge_acc = None
    if with_answers:
        acc = sum(contain_match(r.answer, r.gold_answers) for r in with_answers) / len(with_answers)
        judge_acc = sum(
            judge.semantic_accuracy(r.query_id, r.gold_answers, r.answer)
            for r in with_answers
        ) / len(with_answers)

    try:
        r3 = recall_at_k(records, 3)
        r5 = recall_at_k(records, 5)
    except EmptyDenominatorError:
        r3 = r5 = None

    by_path: dict[str, list[float]] = {}
    for r in records:
        by_path.setdefault(r.path, []).append(r.retrieval_ms)
    mean_by_path = {p: sum(v) / len(v) for p, v in by_path.items()}
    overall = sum(r.retrieval_ms for r in records) / len(records)

    return MetricsReport(
        n_queries=len(records),
        acc=acc,
        judge_acc=judge_acc,
        r_at_3=r3,
        r_at_5=r5,
        mean_retrieval_ms=overall,
        mean_retrieval_ms_by_path=mean_by_path,
        path_counts={p: len(v) for p, v in by_path.items()},
    )


def write_report_csv(path: str, rows: list[dict]) -> None:
    if not rows:
        raise EmptyRecordSetError("no rows to write")
    keys = sorted({k for row in rows for k in row})
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)


def _record_from_answer(query: Query, result) -> RunRecord:
    return RunRecord(
        query_id=query.id,
        path=result.path,
        s=result.s,
        evidence_ids=tuple(result.evidence),
        answer=result.answer,
        gold_answers=query.gold_answers,
        gold_passage_ids=query.gold_passage_ids,
        timings=result.timings,
    )


def _run_one(pipeline: Pipeline, query: Query, mode: AblationMode) -> RunRecord:
    if mode is AblationMode.GENERATOR_ONLY:
        answer = pipeline.generator.generate(query.text, "")
        return RunRecord(query_id=query.id, path="NONE", s=None, evidence_ids=(),
                         answer=answer, gold_answers=query.gold_answers,
                         gold_passage_ids=query.gold_passage_ids, timings={})
    if mode is AblationMode.DENSE_ONLY:
        result = pipeline.answer_query(query, force_path=RetrievalPath.DENSE)
    elif mode is AblationMode.GRAPH_ONLY:
        result = pipeline.answer_query(query, force_path=RetrievalPath.GRAPH)
    elif mode is AblationMode.ROUTED_NO_FUSION:
        pq = pipeline.parse_for(query)
        s = pipeline.score_query(pq)
        decision = route(s, pipeline.thresholds)
        path = decision.path
        if path is RetrievalPath.FUSION:
            path = RetrievalPath.GRAPH if s >= 0.5 else RetrievalPath.DENSE
        result = pipeline.answer_query(query, force_path=path)
        result.s = s
    else:
        result = pipeline.answer_query(query)
    return _record_from_answer(query, result)


def ablation_run(pipeline: Pipeline, queries: list[Query],
                 mode: AblationMode = AblationMode.FULL,
                 judge: Judge | None = None,
                 parallel: bool = False) -> tuple[list[RunRecord], MetricsReport]:
    """Replay queries under one ablation mode and aggregate metrics.

    GENERATOR_ONLY bypasses retrieval entirely; DENSE_ONLY / GRAPH_ONLY force
    a single path; ROUTED_NO_FUSION rounds fusion-band scores to the nearer
    single path (s >= 0.5 goes graph); FULL is the normal tri-routing.

    Sequential by default so latency numbers stay clean. With parallel=True
    queries run across a thread pool (all artifacts are read-only) and the
    per-record timings are dropped, since they no longer measure anything.
    """
    if parallel:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            records = list(pool.map(lambda q: _run_one(pipeline, q, mode), queries))
        for r in records:
            r.timings = {}
    else:
        records = [_run_one(pipeline, query, mode) for query in queries]
    return records, evaluate_run(records, judge=judge)


def bench(pipeline: Pipeline, queries: list[Query], csv_path: str | None = None,
          modes: tuple[AblationMode, ...] = (
              AblationMode.DENSE_ONLY, AblationMode.GRAPH_ONLY,
              AblationMode.ROUTED_NO_FUSION, AblationMode.FULL),
          judge: Judge | None = None) -> list[dict]:
    """Accuracy/latency rows per mode for Pareto-style comparison."""
    rows = []
    for mode in modes:
        _, report = ablation_run(pipeline, queries, mode=mode, judge=judge)
        row = {"mode": mode.value, **report.to_row()}
        rows.append(row)
    if csv_path:
        write_report_csv(csv_path, rows)
    return rows
