"""Tri-routing on the complexity score plus complexity-weighted reciprocal
rank fusion.

Both threshold boundaries route away from fusion: a score equal to the low
threshold goes dense, a score equal to the high threshold goes graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .corpus import RankedList
from .errors import InvalidThresholdsError


class RetrievalPath(str, enum.Enum):
    DENSE = "DENSE"
    GRAPH = "GRAPH"
    FUSION = "FUSION"


@dataclass(frozen=True)
class Thresholds:
    tau_low: float
    tau_high: float

    def __post_init__(self):
        if not (0.0 <= self.tau_low < self.tau_high <= 1.0):
            raise InvalidThresholdsError(
                f"need 0 <= tau_low < tau_high <= 1, got "
                f"({self.tau_low}, {self.tau_high})")


@dataclass(frozen=True)
class RoutingDecision:
    path: RetrievalPath
    score: float


@dataclass(frozen=True)
class RRFConfig:
    k_smooth: float = 60.0

    def __post_init__(self):
        if self.k_smooth <= 0:
            raise ValueError("k_smooth must be positive")


def route(s: float, thresholds: Thresholds) -> RoutingDecision:
    """GRAPH for s >= tau_high, DENSE for s <= tau_low, FUSION in between."""
    if s >= thresholds.tau_high:
        return RoutingDecision(path=RetrievalPath.GRAPH, score=s)
    if s <= thresholds.tau_low:
        return RoutingDecision(path=RetrievalPath.DENSE, score=s)
    return RoutingDecision(path=RetrievalPath.FUSION, score=s)


def weighted_rrf(list_rag: RankedList, list_gr: RankedList, s: float,
                 cfg: RRFConfig, k: int) -> RankedList:
    """Merge two ranked lists with complexity-weighted reciprocal ranks.

    Each document scores (1-s)/(k_smooth + dense rank) + s/(k_smooth +
    graph rank) with 1-based ranks; absence from a list contributes zero.
    Ties break by ascending passage id.
    """
    rank_rag = {pid: i + 1 for i, (pid, _) in enumerate(list_rag.entries)}
    rank_gr = {pid: i + 1 for i, (pid, _) in enumerate(list_gr.entries)}
    union = set(rank_rag) | set(rank_gr)
    scores = {}
    for pid in union:
        score = 0.0
        if pid in rank_rag:
            score += (1.0 - s) / (cfg.k_smooth + rank_rag[pid])
        if pid in rank_gr:
            score += s / (cfg.k_smooth + rank_gr[pid])
        scores[pid] = score
    ranked = sorted(union, key=lambda pid: (-scores[pid], pid))[: max(k, 0)]
    return RankedList(entries=tuple((pid, scores[pid]) for pid in ranked))
