import json

import numpy as np
import pytest

from synroute.corpus import Query
from synroute.errors import IndexNotBuiltError, MissingParseError
from synroute.pipeline import Pipeline, PipelineConfig
from synroute.router import RetrievalPath, Thresholds

from fixtures import build_workload


def test_unbuilt_pipeline_raises(workload):
    corpus, queries, parses = workload
    pipeline = Pipeline(corpus, PipelineConfig())
    with pytest.raises(IndexNotBuiltError):
        pipeline.retrieve_evidence(queries[0], parses[queries[0].id])


def test_missing_parse(workload_pipeline):
    query = Query(id="unknown", text="Anything at all?")
    with pytest.raises(MissingParseError):
        workload_pipeline.retrieve_evidence(query)


def test_dense_path_purity(workload_pipeline, workload):
    _, queries, parses = workload
    simple = next(q for q in queries if q.id.startswith("q-simple"))
    before = dict(workload_pipeline.counters)
    result = workload_pipeline.retrieve_evidence(simple, parses[simple.id])
    assert result.decision.path is RetrievalPath.DENSE
    assert workload_pipeline.counters["dense_searches"] == before["dense_searches"] + 1
    assert workload_pipeline.counters["graph_searches"] == before["graph_searches"]


def test_graph_path_purity(workload_pipeline, workload):
    _, queries, parses = workload
    complexq = next(q for q in queries if q.id.startswith("q-complex"))
    before = dict(workload_pipeline.counters)
    result = workload_pipeline.retrieve_evidence(complexq, parses[complexq.id])
    assert result.decision.path is RetrievalPath.GRAPH
    assert workload_pipeline.counters["graph_searches"] == before["graph_searches"] + 1
    assert workload_pipeline.counters["dense_searches"] == before["dense_searches"]


def test_fusion_runs_both(workload_pipeline, workload):
    _, queries, parses = workload
    simple = next(q for q in queries if q.id.startswith("q-simple"))
    saved = workload_pipeline.thresholds
    workload_pipeline.thresholds = Thresholds(0.01, 0.99)
    try:
        before = dict(workload_pipeline.counters)
        result = workload_pipeline.retrieve_evidence(simple, parses[simple.id])
        assert result.decision.path is RetrievalPath.FUSION
        assert workload_pipeline.counters["dense_searches"] == before["dense_searches"] + 1
        assert workload_pipeline.counters["graph_searches"] == before["graph_searches"] + 1
        assert result.timings["fuse_ms"] >= 0.0
    finally:
        workload_pipeline.thresholds = saved


def test_answer_record_shape(workload_pipeline, workload):
    _, queries, _ = workload
    q = next(q for q in queries if q.id.startswith("q-simple"))
    result = workload_pipeline.answer_query(q)
    assert result.query_id == q.id
    assert result.path in ("DENSE", "GRAPH", "FUSION")
    assert 0.0 < result.s < 1.0
    assert set(result.timings) == {"featurize_ms", "dense_ms", "graph_ms", "fuse_ms"}
    assert isinstance(result.evidence, list) and result.evidence
    payload = json.dumps(result.__dict__)
    assert q.id in payload


def test_routing_thresholds_separate_score_clusters(workload_pipeline, workload):
    _, queries, parses = workload
    for q in queries:
        s = workload_pipeline.score_query(parses[q.id])
        if q.id.startswith(("q-simple", "q-season")):
            assert s < 0.4
        else:
            assert s > 0.6


def test_score_determinism(workload_pipeline, workload):
    _, queries, parses = workload
    pq = parses[queries[0].id]
    assert workload_pipeline.score_query(pq) == workload_pipeline.score_query(pq)


def test_artifact_roundtrip(tmp_path, workload_pipeline, workload):
    corpus, queries, parses = workload
    workspace = tmp_path / "ws"
    workload_pipeline.save_artifacts(str(workspace))

    fresh = Pipeline(corpus, PipelineConfig.load(str(workspace / "config.json")))
    fresh.parses = dict(parses)
    fresh.load_artifacts(str(workspace))
    for q in queries[:6]:
        a = workload_pipeline.answer_query(q)
        b = fresh.answer_query(q)
        assert a.path == b.path
        assert a.evidence == b.evidence
        assert a.answer == b.answer
        assert a.s == pytest.approx(b.s, abs=1e-12)


def test_config_roundtrip(tmp_path):
    cfg = PipelineConfig(k=7, tau_low=0.2, tau_high=0.9, hidden_dims=(32, 32))
    path = tmp_path / "config.json"
    cfg.save(str(path))
    loaded = PipelineConfig.load(str(path))
    assert loaded == cfg


def test_train_adapter_requires_indexes(workload):
    corpus, queries, parses = workload
    pipeline = Pipeline(corpus, PipelineConfig())
    pipeline.parses = dict(parses)
    with pytest.raises(IndexNotBuiltError):
        pipeline.train_adapter(queries)
