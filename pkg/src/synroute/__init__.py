"""Complexity-aware retrieval routing.

Queries are scored for syntactic complexity by a small MLP over parse-tree
features, then routed to dense retrieval, graph diffusion retrieval, or a
complexity-weighted fusion of both before answer generation.
"""

from .corpus import Corpus, Passage, Query, RankedList, load_corpus, load_queries, pack_context
from .errors import SynrouteError
from .pipeline import Pipeline, PipelineConfig
from .router import RetrievalPath, RoutingDecision, Thresholds, route, weighted_rrf

__version__ = "0.1.0"

__all__ = [
    "Corpus", "Passage", "Query", "RankedList",
    "load_corpus", "load_queries", "pack_context",
    "Pipeline", "PipelineConfig",
    "RetrievalPath", "RoutingDecision", "Thresholds", "route", "weighted_rrf",
    "SynrouteError", "__version__",
]
