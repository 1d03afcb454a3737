"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"


class StatusResponse(BaseModel):
    workspace: str
    passages: int = 0
    queries: int = 0
    parses: int = 0
    facts: int = 0
    entities: int = 0
    dense_built: bool = False
    graph_built: bool = False
    adapter_loaded: bool = False
    schema_loaded: bool = False
    tau_low: float
    tau_high: float


class LoadRequest(BaseModel):
    corpus_path: str | None = None
    queries_path: str | None = None
    parses_path: str | None = None


class LoadResponse(BaseModel):
    passages: int
    queries: int
    parses: int
    parse_errors: int = 0


class IndexResponse(BaseModel):
    passages: int
    facts: int
    entities: int
    relation_edges: int
    occurrence_edges: int
    synonymy_edges: int


class FeaturizeRequest(BaseModel):
    csv_path: str | None = None


class FeaturizeResponse(BaseModel):
    n_rows: int
    n_features: int
    csv_path: str | None = None


class TrainRequest(BaseModel):
    epochs: int | None = None
    seed: int | None = None


class TrainResponse(BaseModel):
    n_queries: int
    n_disagreement: int
    train_accuracy: float


class TuneRequest(BaseModel):
    grid_step: float | None = None
    lambda_latency: float | None = None


class TuneResponse(BaseModel):
    tau_low: float
    tau_high: float


class EntityPayload(BaseModel):
    text: str
    type: str = "OTHER"
    start: int
    end: int


class ParsePayload(BaseModel):
    conllu: str
    constituency: str
    entities: list[EntityPayload] = Field(default_factory=list)


class QueryRequest(BaseModel):
    question: str
    query_id: str | None = None
    parse: ParsePayload | None = None


class QueryResponse(BaseModel):
    query_id: str
    s: float | None
    path: str
    evidence: list[str]
    answer: str
    timings: dict[str, float]


class EvalRequest(BaseModel):
    mode: str = "FULL"


class EvalResponse(BaseModel):
    mode: str
    n_queries: int
    acc: float | None
    judge_acc: float | None
    r_at_3: float | None
    r_at_5: float | None
    mean_retrieval_ms: float
    mean_retrieval_ms_by_path: dict[str, float]
    path_counts: dict[str, int]


class BenchRequest(BaseModel):
    csv_path: str | None = None
    modes: list[str] | None = None


class BenchResponse(BaseModel):
    rows: list[dict]
