"""FastAPI service wrapping the retrieval pipeline.

The service owns one workspace directory holding the input files
(corpus.jsonl, queries.jsonl, parses.jsonl) and the built artifacts
(dense.idx, graph.jsonl, facts.jsonl, schema.json, adapter.json,
thresholds.json, config.json). Artifacts persist across restarts and are
loaded lazily at startup when present.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..corpus import Query, load_corpus, load_queries
from ..errors import (
    IndexNotBuiltError,
    MissingFileError,
    MissingParseError,
    SynrouteError,
)
from ..evaluation import (
    AblationMode,
    TuneConfig,
    ablation_run,
    bench,
    build_tune_records,
    tune_thresholds,
)
from ..features import assemble_raw, export_features_csv
from ..parses import load_parse_records, parse_record_to_query
from ..pipeline import Pipeline, PipelineConfig
from .schemas import (
    BenchRequest,
    BenchResponse,
    EvalRequest,
    EvalResponse,
    FeaturizeRequest,
    FeaturizeResponse,
    HealthResponse,
    IndexResponse,
    LoadRequest,
    LoadResponse,
    QueryRequest,
    QueryResponse,
    StatusResponse,
    TrainRequest,
    TrainResponse,
    TuneRequest,
    TuneResponse,
)


class ServiceState:
    def __init__(self, workspace: str, config: PipelineConfig):
        self.workspace = workspace
        self.config = config
        self.pipeline: Pipeline | None = None
        self.queries: list[Query] = []
        self.parse_errors = 0

    def require_pipeline(self) -> Pipeline:
        if self.pipeline is None:
            raise IndexNotBuiltError("no corpus loaded; POST /load first")
        return self.pipeline

    def path(self, name: str) -> str:
        return os.path.join(self.workspace, name)


def create_app(workspace: str, config: PipelineConfig | None = None) -> FastAPI:
    os.makedirs(workspace, exist_ok=True)
    config_path = os.path.join(workspace, "config.json")
    if config is None:
        config = (PipelineConfig.load(config_path)
                  if os.path.exists(config_path) else PipelineConfig())
    state = ServiceState(workspace, config)
    app = FastAPI(title="synroute", version="0.1.0")
    app.state.service = state

    @app.exception_handler(SynrouteError)
    async def synroute_error_handler(request: Request, exc: SynrouteError):
        status = 404 if isinstance(exc, MissingFileError) else 400
        return JSONResponse(status_code=status, content={
            "error": type(exc).__name__, "detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse()

    @app.get("/status", response_model=StatusResponse)
    def status():
        p = state.pipeline
        return StatusResponse(
            workspace=state.workspace,
            passages=len(p.corpus) if p else 0,
            queries=len(state.queries),
            parses=len(p.parses) if p else 0,
            facts=len(p.facts) if p else 0,
            entities=len(p.graph.entity_nodes) if p and p.graph else 0,
            dense_built=bool(p and p.dense_index is not None),
            graph_built=bool(p and p.graph is not None),
            adapter_loaded=bool(p and p.adapter is not None),
            schema_loaded=bool(p and p.schema is not None),
            tau_low=(p.thresholds.tau_low if p else state.config.tau_low),
            tau_high=(p.thresholds.tau_high if p else state.config.tau_high),
        )

    @app.post("/load", response_model=LoadResponse)
    def load(req: LoadRequest):
        corpus_path = req.corpus_path or state.path("corpus.jsonl")
        corpus = load_corpus(corpus_path)
        pipeline = Pipeline(corpus, state.config)
        queries_path = req.queries_path or state.path("queries.jsonl")
        state.queries = load_queries(queries_path) if os.path.exists(queries_path) else []
        parses_path = req.parses_path or state.path("parses.jsonl")
        state.parse_errors = 0
        if os.path.exists(parses_path):
            parses, failed = load_parse_records(parses_path)
            pipeline.parses = parses
            state.parse_errors = len(failed)
        state.pipeline = pipeline
        for artifact in ("dense.idx", "graph.jsonl", "facts.jsonl"):
            if not os.path.exists(state.path(artifact)):
                break
        else:
            pipeline.load_artifacts(state.workspace)
        return LoadResponse(passages=len(corpus), queries=len(state.queries),
                            parses=len(pipeline.parses),
                            parse_errors=state.parse_errors)

    @app.post("/index", response_model=IndexResponse)
    def index():
        pipeline = state.require_pipeline()
        stats = pipeline.build_indexes()
        pipeline.save_artifacts(state.workspace)
        return IndexResponse(**stats)

    @app.post("/featurize", response_model=FeaturizeResponse)
    def featurize_endpoint(req: FeaturizeRequest):
        pipeline = state.require_pipeline()
        if not pipeline.parses:
            raise MissingParseError("no parses loaded")
        ids = sorted(pipeline.parses)
        raws = [assemble_raw(pipeline.parses[qid]) for qid in ids]
        csv_path = req.csv_path or state.path("features.csv")
        export_features_csv(csv_path, ids, raws)
        return FeaturizeResponse(n_rows=len(raws), n_features=len(raws[0].names),
                                 csv_path=csv_path)

    @app.post("/train", response_model=TrainResponse)
    def train_endpoint(req: TrainRequest):
        pipeline = state.require_pipeline()
        if req.epochs is not None or req.seed is not None:
            cfg = pipeline.config
            cfg.epochs = req.epochs if req.epochs is not None else cfg.epochs
            cfg.seed = req.seed if req.seed is not None else cfg.seed
        stats = pipeline.train_adapter(state.queries)
        pipeline.save_artifacts(state.workspace)
        return TrainResponse(**stats)

    @app.post("/tune", response_model=TuneResponse)
    def tune_endpoint(req: TuneRequest):
        pipeline = state.require_pipeline()
        cfg = TuneConfig(
            grid_step=req.grid_step or pipeline.config.grid_step,
            lambda_latency=(req.lambda_latency
                            if req.lambda_latency is not None
                            else pipeline.config.lambda_latency),
            K=pipeline.config.k)
        records = build_tune_records(pipeline, state.queries)
        pipeline.thresholds = tune_thresholds(records, cfg)
        pipeline.save_artifacts(state.workspace)
        return TuneResponse(tau_low=pipeline.thresholds.tau_low,
                            tau_high=pipeline.thresholds.tau_high)

    @app.post("/query", response_model=QueryResponse)
    def query_endpoint(req: QueryRequest):
        pipeline = state.require_pipeline()
        qid = req.query_id or "adhoc"
        pq = None
        if req.parse is not None:
            pq = parse_record_to_query({
                "id": qid,
                "conllu": req.parse.conllu,
                "constituency": req.parse.constituency,
                "entities": [e.model_dump() for e in req.parse.entities],
            })
        result = pipeline.answer_query(Query(id=qid, text=req.question), pq)
        return QueryResponse(query_id=result.query_id, s=result.s,
                             path=result.path, evidence=result.evidence,
                             answer=result.answer, timings=result.timings)

    @app.post("/eval", response_model=EvalResponse)
    def eval_endpoint(req: EvalRequest):
        pipeline = state.require_pipeline()
        mode = AblationMode(req.mode)
        _records, report = ablation_run(pipeline, state.queries, mode)
        return EvalResponse(mode=mode.value, n_queries=report.n_queries,
                            acc=report.acc, judge_acc=report.judge_acc,
                            r_at_3=report.r_at_3, r_at_5=report.r_at_5,
                            mean_retrieval_ms=report.mean_retrieval_ms,
                            mean_retrieval_ms_by_path=report.mean_retrieval_ms_by_path,
                            path_counts=report.path_counts)

    @app.post("/bench", response_model=BenchResponse)
    def bench_endpoint(req: BenchRequest):
        pipeline = state.require_pipeline()
        modes = tuple(AblationMode(m) for m in req.modes) if req.modes else (
            AblationMode.DENSE_ONLY, AblationMode.GRAPH_ONLY,
            AblationMode.ROUTED_NO_FUSION, AblationMode.FULL)
        rows = bench(pipeline, state.queries, req.csv_path, modes=modes)
        return BenchResponse(rows=rows)

    return app
