"""End-to-end orchestration: featurize, score, route, retrieve, generate.

A Pipeline owns the immutable artifacts (corpus, dense index, graph, fact
store, feature schema, adapter, thresholds) plus the pluggable components
(encoder, fact extractor, reranker, generator, judge). Queries are
independent; instrumentation counters record how many dense and graph
searches actually ran so path purity is checkable.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .adapter import (
    AdapterConfig,
    AdapterModel,
    TrainingSample,
    build_disagreement_set,
    forward_score,
    train,
)
from .corpus import Corpus, Query, RankedList, pack_context
from .encoders import Encoder, HashEncoder
from .errors import IndexNotBuiltError, MissingParseError
from .features import FeatureSchema, assemble_raw, featurize, fit_schema
from .generation import (
    ContainMatchJudge,
    ExtractiveGenerator,
    Generator,
    Judge,
    contain_match,
)
from .graph import (
    Fact,
    HeteroGraph,
    MockOpenIE,
    OpenIE,
    build_graph,
    embed_facts,
    extract_corpus_facts,
)
from .graph_retrieval import (
    MockReranker,
    PPRConfig,
    Reranker,
    entity_seed_weights,
    fact_scores,
    graph_search,
    run_ppr,
    select_and_rerank,
)
from .parses import ParsedQuery
from .router import RetrievalPath, RoutingDecision, RRFConfig, Thresholds, route, weighted_rrf


@dataclass
class PipelineConfig:
    """Every knob of the system, JSON-serializable for the config file."""

    k: int = 5                      # passages returned per query
    tau_low: float = 0.4
    tau_high: float = 0.6
    alpha: float = 0.5              # PPR reset probability
    ppr_tol: float = 1e-10
    ppr_max_iters: int = 1000
    k_smooth: float = 60.0          # RRF constant
    fact_top_k: int = 30            # candidate facts before reranking
    seed_entities: int = 10         # seed set size k'
    lambda_latency: float = 0.1
    grid_step: float = 0.05
    synonymy_tau: float = 0.8
    encoder_dim: int = 256
    max_context_chars: int = 4000
    selected_features: int = 85
    hidden_dims: tuple[int, ...] = (256, 128, 64)
    label_smoothing: float = 0.1
    lr: float = 1e-3
    weight_decay: float = 1e-2
    epochs: int = 200
    seed: int = 0
    n_train: int = 1000
    n_disagreement: int = 200
    n_test: int = 3000

    def to_json(self) -> dict:
        out = asdict(self)
        out["hidden_dims"] = list(self.hidden_dims)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "PipelineConfig":
        kwargs = dict(obj)
        if "hidden_dims" in kwargs:
            kwargs["hidden_dims"] = tuple(kwargs["hidden_dims"])
        return cls(**kwargs)

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=2)

    @classmethod
    def load(cls, path: str) -> "PipelineConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


@dataclass
class EvidenceResult:
    ranked: RankedList
    decision: RoutingDecision | None
    timings: dict[str, float]  # featurize_ms, dense_ms, graph_ms, fuse_ms


@dataclass
class AnswerResult:
    query_id: str
    s: float | None
    path: str
    evidence: list[str]
    answer: str
    timings: dict[str, float]


class Pipeline:
    def __init__(self, corpus: Corpus, config: PipelineConfig,
                 encoder: Encoder | None = None,
                 openie: OpenIE | None = None,
                 reranker: Reranker | None = None,
                 generator: Generator | None = None,
                 judge: Judge | None = None):
        self.corpus = corpus
        self.config = config
        self.encoder = encoder or HashEncoder(dim=config.encoder_dim)
        self.openie = openie or MockOpenIE()
        self.reranker = reranker or MockReranker()
        self.generator = generator or ExtractiveGenerator()
        self.judge = judge or ContainMatchJudge()

        self.dense_index = None
        self.graph: HeteroGraph | None = None
        self.facts: list[Fact] = []
        self.schema: FeatureSchema | None = None
        self.adapter: AdapterModel | None = None
        self.thresholds = Thresholds(config.tau_low, config.tau_high)
        self.parses: dict[str, ParsedQuery] = {}
        self.counters = {"dense_searches": 0, "graph_searches": 0}

    # --- index building -----------------------------------------------------

    def build_indexes(self) -> dict:
        from .dense import build_dense_index

        self.dense_index = build_dense_index(self.corpus, self.encoder)
        self.facts = embed_facts(extract_corpus_facts(self.corpus, self.openie),
                                 self.encoder)
        self.graph = build_graph(self.corpus, self.facts, self.encoder,
                                 tau=self.config.synonymy_tau)
        return {
            "passages": len(self.corpus),
            "facts": len(self.facts),
            "entities": len(self.graph.entity_nodes),
            "relation_edges": len(self.graph.relation_edges),
            "occurrence_edges": len(self.graph.occurrence_edges),
            "synonymy_edges": len(self.graph.synonymy_edges),
        }

    def require_indexes(self):
        if self.dense_index is None or self.graph is None:
            raise IndexNotBuiltError("indexes not built; run build_indexes first")

    def require_adapter(self):
        if self.schema is None or self.adapter is None:
            raise IndexNotBuiltError("adapter/schema not available; train first")

    # --- scoring ------------------------------------------------------------

    def parse_for(self, query: Query, pq: ParsedQuery | None = None) -> ParsedQuery:
        pq = pq or self.parses.get(query.id)
        if pq is None:
            raise MissingParseError(f"no parse available for query {query.id!r}")
        return pq

    def score_query(self, pq: ParsedQuery) -> float:
        self.require_adapter()
        x = featurize(pq, self.schema)
        _, s = forward_score(self.adapter, x)
        return s

    # --- retrieval paths ----------------------------------------------------

    def dense_list(self, question: str) -> RankedList:
        from .dense import dense_search

        self.require_indexes()
        self.counters["dense_searches"] += 1
        q_emb = self.encoder.encode(question)
        return dense_search(self.dense_index, q_emb, self.config.k)

    def graph_list(self, question: str) -> RankedList:
        self.require_indexes()
        self.counters["graph_searches"] += 1
        q_emb = self.encoder.encode(question)
        scores = fact_scores(q_emb, self.facts)
        top = select_and_rerank(question, self.facts, scores,
                                self.config.fact_top_k, self.reranker)
        seeds = entity_seed_weights(top, self.graph, self.config.seed_entities)
        ppr_cfg = PPRConfig(alpha=self.config.alpha, tol=self.config.ppr_tol,
                            max_iters=self.config.ppr_max_iters)
        diffusion = run_ppr(self.graph, seeds, ppr_cfg)
        return graph_search(self.graph, diffusion, self.config.k)

    # --- orchestration ------------------------------------------------------

    def retrieve_evidence(self, query: Query, pq: ParsedQuery | None = None,
                          force_path: RetrievalPath | None = None) -> EvidenceResult:
        self.require_indexes()
        timings = {"featurize_ms": 0.0, "dense_ms": 0.0, "graph_ms": 0.0,
                   "fuse_ms": 0.0}
        if force_path is None:
            pq = self.parse_for(query, pq)
            t0 = time.perf_counter()
            s = self.score_query(pq)
            timings["featurize_ms"] = (time.perf_counter() - t0) * 1e3
            decision = route(s, self.thresholds)
        else:
            s = None
            decision = RoutingDecision(path=force_path, score=float("nan"))

        if decision.path is RetrievalPath.DENSE:
            t0 = time.perf_counter()
            ranked = self.dense_list(query.text)
            timings["dense_ms"] = (time.perf_counter() - t0) * 1e3
        elif decision.path is RetrievalPath.GRAPH:
            t0 = time.perf_counter()
            ranked = self.graph_list(query.text)
            timings["graph_ms"] = (time.perf_counter() - t0) * 1e3
        else:
            t0 = time.perf_counter()
            list_rag = self.dense_list(query.text)
            timings["dense_ms"] = (time.perf_counter() - t0) * 1e3
            t0 = time.perf_counter()
            list_gr = self.graph_list(query.text)
            timings["graph_ms"] = (time.perf_counter() - t0) * 1e3
            t0 = time.perf_counter()
            ranked = weighted_rrf(list_rag, list_gr, decision.score,
                                  RRFConfig(k_smooth=self.config.k_smooth),
                                  self.config.k)
            timings["fuse_ms"] = (time.perf_counter() - t0) * 1e3
        return EvidenceResult(ranked=ranked, decision=decision, timings=timings)

    def answer_query(self, query: Query, pq: ParsedQuery | None = None,
                     force_path: RetrievalPath | None = None) -> AnswerResult:
        ev = self.retrieve_evidence(query, pq, force_path=force_path)
        context = pack_context(self.corpus, ev.ranked, self.config.k,
                               self.config.max_context_chars)
        answer = self.generator.generate(query.text, context)
        s = None if force_path is not None else ev.decision.score
        return AnswerResult(query_id=query.id, s=s, path=ev.decision.path.value,
                            evidence=ev.ranked.ids(), answer=answer,
                            timings=ev.timings)

    # --- training -----------------------------------------------------------

    def train_adapter(self, queries: list[Query],
                      parses: dict[str, ParsedQuery] | None = None) -> dict:
        """Run both retrievers on the training queries, keep the disagreement
        set, fit the feature schema on it, and train the adapter."""
        self.require_indexes()
        parses = parses or self.parses
        usable = [q for q in queries if q.id in parses]
        if len(usable) > self.config.n_train:
            usable = usable[: self.config.n_train]
        raw_rows = []
        z_rag, z_gr = [], []
        for q in usable:
            pq = parses[q.id]
            raw_rows.append(assemble_raw(pq).values)
            dense_answer = self.generator.generate(
                q.text, pack_context(self.corpus, self.dense_list(q.text),
                                     self.config.k, self.config.max_context_chars))
            graph_answer = self.generator.generate(
                q.text, pack_context(self.corpus, self.graph_list(q.text),
                                     self.config.k, self.config.max_context_chars))
            z_rag.append(contain_match(dense_answer, q.gold_answers))
            z_gr.append(contain_match(graph_answer, q.gold_answers))

        disagreement = [(x, zg) for x, zr, zg in zip(raw_rows, z_rag, z_gr)
                        if zr ^ zg]
        if len(disagreement) > self.config.n_disagreement:
            disagreement = disagreement[: self.config.n_disagreement]
        X_raw = np.stack([x for x, _ in disagreement])
        y = np.array([lbl for _, lbl in disagreement], dtype=np.int64)
        self.schema = fit_schema(X_raw, y, self.config.selected_features)

        X_std = (X_raw[:, list(self.schema.selected)] - self.schema.mu) / self.schema.sigma
        samples = [TrainingSample(x=X_std[i], y=int(y[i])) for i in range(len(y))]
        cfg = AdapterConfig(input_dim=self.schema.dim,
                            hidden_dims=self.config.hidden_dims,
                            label_smoothing=self.config.label_smoothing,
                            lr=self.config.lr,
                            weight_decay=self.config.weight_decay,
                            epochs=self.config.epochs, seed=self.config.seed)
        self.adapter = train(cfg, samples)
        preds = (self.adapter.scores(np.stack([s.x for s in samples])) >= 0.5)
        train_acc = float(np.mean(preds == (y == 1)))
        return {"n_queries": len(usable), "n_disagreement": len(samples),
                "train_accuracy": train_acc}

    # --- persistence --------------------------------------------------------

    def save_artifacts(self, workspace: str) -> None:
        from .adapter import save_model
        from .dense import persist_dense_index
        from .graph import persist_graph, save_facts

        self.require_indexes()
        os.makedirs(workspace, exist_ok=True)
        persist_dense_index(self.dense_index, os.path.join(workspace, "dense.idx"))
        persist_graph(self.graph, os.path.join(workspace, "graph.jsonl"))
        save_facts(self.facts, os.path.join(workspace, "facts.jsonl"))
        self.config.save(os.path.join(workspace, "config.json"))
        if self.schema is not None:
            self.schema.save(os.path.join(workspace, "schema.json"))
        if self.adapter is not None:
            save_model(self.adapter, os.path.join(workspace, "adapter.json"))
        with open(os.path.join(workspace, "thresholds.json"), "w", encoding="utf-8") as fh:
            json.dump({"tau_low": self.thresholds.tau_low,
                       "tau_high": self.thresholds.tau_high}, fh)

    def load_artifacts(self, workspace: str) -> None:
        from .adapter import load_model
        from .dense import load_dense_index
        from .graph import load_graph, load_facts

        self.dense_index = load_dense_index(os.path.join(workspace, "dense.idx"))
        self.graph = load_graph(os.path.join(workspace, "graph.jsonl"))
        self.facts = embed_facts(load_facts(os.path.join(workspace, "facts.jsonl")),
                                 self.encoder)
        schema_path = os.path.join(workspace, "schema.json")
        if os.path.exists(schema_path):
            self.schema = FeatureSchema.load(schema_path)
        model_path = os.path.join(workspace, "adapter.json")
        if os.path.exists(model_path):
            self.adapter = load_model(model_path)
        thr_path = os.path.join(workspace, "thresholds.json")
        if os.path.exists(thr_path):
            with open(thr_path, encoding="utf-8") as fh:
                obj = json.load(fh)
            self.thresholds = Thresholds(obj["tau_low"], obj["tau_high"])
