"""Online graph retrieval: fact scoring, candidate reranking, entity seed
weighting with a hub penalty, Personalized PageRank diffusion, and passage
ranking.

The transition matrix treats all edge kinds as unweighted and undirected,
with uniform probability over a node's neighbors; mass on dangling nodes
teleports back to the reset distribution, so the diffusion vector stays a
probability vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from .corpus import RankedList
from .errors import (
    EmptyFactSetError,
    EntityNotInGraphError,
    NoConvergenceError,
    ZeroOccurrenceError,
)
from .graph import ENTITY, PASSAGE, Fact, HeteroGraph


@dataclass(frozen=True)
class PPRConfig:
    alpha: float = 0.5  # reset probability
    tol: float = 1e-10
    max_iters: int = 1000

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")


@dataclass
class ResetVector:
    """Seed distribution over entity nodes; weights sum to 1 once normalized."""

    weights: dict[str, float]

    def normalized(self) -> "ResetVector":
        total = sum(self.weights.values())
        if total <= 0:
            raise ValueError("reset vector has no mass")
        return ResetVector({k: v / total for k, v in self.weights.items()})


@dataclass
class DiffusionVector:
    scores: dict[tuple[str, str], float]

    def passage_scores(self) -> dict[str, float]:
        return {name: v for (kind, name), v in self.scores.items() if kind == PASSAGE}


def fact_scores(q_emb: np.ndarray, facts: list[Fact]) -> np.ndarray:
    """Min-max normalized query/fact inner products (all-equal maps to 1.0)."""
    if not facts:
        raise EmptyFactSetError("no facts to score")
    raw = np.array([float(np.dot(q_emb, f.embedding)) for f in facts],
                   dtype=np.float64)
    lo, hi = raw.min(), raw.max()
    if hi == lo:
        return np.ones_like(raw)
    return (raw - lo) / (hi - lo)


@runtime_checkable
class Reranker(Protocol):
    def rerank(self, query_text: str, candidates: list[tuple[Fact, float]]
               ) -> list[tuple[Fact, float]]: ...


class MockReranker:
    """Keeps candidates whose head or tail occurs (case-insensitively) in the
    query, preserving score order; keeps everything when none overlap."""

    def rerank(self, query_text: str, candidates):
        q = query_text.lower()
        kept = [(f, s) for f, s in candidates
                if f.head.lower() in q or f.tail.lower() in q]
        return kept if kept else list(candidates)


def select_and_rerank(query_text: str, facts: list[Fact], scores: np.ndarray,
                      k: int, reranker: Reranker) -> list[tuple[Fact, float]]:
    """Top-k facts by normalized score (ties keep insertion order), then the
    reranker refines the shortlist."""
    if not facts:
        raise EmptyFactSetError("no facts to select from")
    order = sorted(range(len(facts)), key=lambda i: (-scores[i], i))
    shortlist = [(facts[i], float(scores[i])) for i in order[:k]]
    return reranker.rerank(query_text, shortlist)


def entity_seed_weights(top_facts: list[tuple[Fact, float]], graph: HeteroGraph,
                        k_prime: int) -> ResetVector:
    """Seed entities weighted by fact score over occurrence count.

    Facts are visited in list order and a re-visited entity keeps the weight
    of the most recently encountered fact. The top-k' entities by weight
    (ties toward the lexicographically smaller name) are kept and normalized
    to sum 1; an all-zero selection falls back to uniform.
    """
    weights: dict[str, float] = {}
    for fact, score in top_facts:
        for name in (fact.head, fact.tail):
            entity = graph.canonical(name)
            if entity is None:
                raise EntityNotInGraphError(f"entity {name!r} not in graph")
            occ = graph.occurrence_count(entity)
            if occ == 0:
                raise ZeroOccurrenceError(f"entity {entity!r} occurs in no passage")
            weights[entity] = score / occ
    chosen = sorted(weights, key=lambda e: (-weights[e], e))[:k_prime]
    total = sum(weights[e] for e in chosen)
    if total <= 0:
        return ResetVector({e: 1.0 / len(chosen) for e in chosen})
    return ResetVector({e: weights[e] / total for e in chosen})


def run_ppr(graph: HeteroGraph, r0: ResetVector, cfg: PPRConfig) -> DiffusionVector:
    """Power iteration of r <- alpha r0 + (1-alpha) P^T r until the L1 change
    drops below tol."""
    nodes, index, src, dst, degree = graph.adjacency()
    if not nodes:
        raise ValueError("graph has no nodes")
    n = len(nodes)
    reset = np.zeros(n, dtype=np.float64)
    for entity, w in r0.weights.items():
        key = (ENTITY, entity)
        if key not in index:
            raise EntityNotInGraphError(f"seed {entity!r} not in graph")
        reset[index[key]] = w
    total = reset.sum()
    if total <= 0:
        raise ValueError("reset vector has no mass")
    reset /= total

    alpha = cfg.alpha
    dangling = degree == 0
    safe_degree = np.where(dangling, 1.0, degree)
    r = reset.copy()
    for _ in range(cfg.max_iters):
        contrib = r / safe_degree
        spread = np.bincount(dst, weights=contrib[src], minlength=n).astype(np.float64)
        spread += r[dangling].sum() * reset
        r_next = alpha * reset + (1.0 - alpha) * spread
        if np.abs(r_next - r).sum() < cfg.tol:
            r = r_next
            break
        r = r_next
    else:
        raise NoConvergenceError(cfg.max_iters)
    return DiffusionVector(scores={node: float(r[i]) for i, node in enumerate(nodes)})


def graph_search(graph: HeteroGraph, diffusion: DiffusionVector, k: int) -> RankedList:
    """Passage nodes of the diffusion vector, ranked; ids order ties."""
    scores = diffusion.passage_scores()
    ranked = sorted(graph.passage_nodes, key=lambda pid: (-scores.get(pid, 0.0), pid))
    top = ranked[: max(k, 0)]
    return RankedList(entries=tuple((pid, scores.get(pid, 0.0)) for pid in top))
