"""Offline heterogeneous graph construction from OpenIE facts.

Nodes are entities (deduplicated case-insensitively) and passages. Three
edge kinds connect them: relation edges between the entities of a fact,
occurrence edges from an entity to every passage whose facts mention it,
and synonymy edges between entity pairs whose embedding cosine reaches the
configured threshold.

The fact extractor is an interface; the deterministic mock emits a triple
for every "<CapitalizedSpan> <short verb phrase> <CapitalizedSpan>" pattern
inside a sentence.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Protocol, runtime_checkable

import numpy as np

from .corpus import Corpus, Passage
from .encoders import Encoder
from .errors import GraphFormatError, MissingFileError, UnknownSourcePassageError

ENTITY = "entity"
PASSAGE = "passage"

_SENT_SPLIT = re.compile(r"(?<=[.!?])\s+")
_EDGE_PUNCT = re.compile(r"^[^A-Za-z0-9]+|[^A-Za-z0-9]+$")
_SPAN_LINKERS = frozenset({"of", "the"})
_AUX_VERBS = frozenset({
    "is", "are", "was", "were", "be", "been", "being", "has", "have", "had",
    "will", "would", "can", "could", "did", "does", "made", "became", "won",
})


@dataclass
class Fact:
    head: str
    relation: str
    tail: str
    source_passage_id: str
    embedding: np.ndarray | None = None

    def render(self) -> str:
        return f"{self.head} {self.relation} {self.tail}"


@runtime_checkable
class OpenIE(Protocol):
    def extract_facts(self, passage: Passage) -> list[Fact]: ...


def _clean(token: str) -> str:
    return _EDGE_PUNCT.sub("", token)


def _span_like(token: str) -> bool:
    t = _clean(token)
    return bool(t) and (t[0].isupper() or t[0].isdigit())


def _verb_like(token: str) -> bool:
    t = _clean(token).lower()
    return bool(t) and (t in _AUX_VERBS or t.endswith("ed") or t.endswith("s"))


class MockOpenIE:
    """Pattern-based extractor over capitalized spans.

    A span is a maximal run of capitalized/numeric tokens (single "of"/"the"
    linkers between such tokens are absorbed). Two adjacent spans separated
    by one to four tokens starting with a verb-like token yield one fact.
    """

    MAX_GAP = 4

    def extract_facts(self, passage: Passage) -> list[Fact]:
        facts = []
        for sentence in _SENT_SPLIT.split(passage.text):
            tokens = sentence.split()
            spans = self._spans(tokens)
            for (s1, e1, head), (s2, _e2, tail) in zip(spans, spans[1:]):
                gap = tokens[e1 + 1:s2]
                if not 1 <= len(gap) <= self.MAX_GAP:
                    continue
                if not _verb_like(gap[0]):
                    continue
                relation = " ".join(_clean(t) for t in gap)
                facts.append(Fact(head=head, relation=relation, tail=tail,
                                  source_passage_id=passage.id))
        return facts

    def _spans(self, tokens: list[str]) -> list[tuple[int, int, str]]:
        spans = []
        i = 0
        n = len(tokens)
        while i < n:
            if not _span_like(tokens[i]):
                i += 1
                continue
            end = i
            k = i + 1
            while k < n:
                if _span_like(tokens[k]):
                    end = k
                    k += 1
                elif (_clean(tokens[k]).lower() in _SPAN_LINKERS
                      and end == k - 1 and k + 1 < n and _span_like(tokens[k + 1])):
                    k += 1
                else:
                    break
            text = " ".join(_clean(t) for t in tokens[i:end + 1]
                            if _clean(t))
            spans.append((i, end, text))
            i = end + 1
        return spans


class HeteroGraph:
    """Entity/passage graph with relation, occurrence and synonymy edges."""

    def __init__(self, entity_nodes: set[str], passage_nodes: set[str],
                 relation_edges: set[tuple[str, str, str]],
                 occurrence_edges: set[tuple[str, str]],
                 synonymy_edges: set[frozenset]):
        self.entity_nodes = set(entity_nodes)
        self.passage_nodes = set(passage_nodes)
        self.relation_edges = set(relation_edges)
        self.occurrence_edges = set(occurrence_edges)
        self.synonymy_edges = set(synonymy_edges)
        for pair in self.synonymy_edges:
            if len(pair) != 2:
                raise GraphFormatError("synonymy edges must join two distinct entities")
        self._canonical = {e.lower(): e for e in self.entity_nodes}
        self._occ_counts: dict[str, int] = {}
        for entity, _pid in self.occurrence_edges:
            self._occ_counts[entity] = self._occ_counts.get(entity, 0) + 1
        self._adjacency = None

    def canonical(self, name: str) -> str | None:
        return self._canonical.get(name.lower())

    def occurrence_count(self, entity: str) -> int:
        return self._occ_counts.get(entity, 0)

    def adjacency(self):
        """Node ordering plus undirected neighbor lists (parallel edges of
        different kinds between the same pair collapse to one edge)."""
        if self._adjacency is None:
            nodes = ([(ENTITY, e) for e in sorted(self.entity_nodes)]
                     + [(PASSAGE, p) for p in sorted(self.passage_nodes)])
            index = {node: i for i, node in enumerate(nodes)}
            pairs = set()
            for h, t, _label in self.relation_edges:
                a, b = index[(ENTITY, h)], index[(ENTITY, t)]
                if a != b:
                    pairs.add((min(a, b), max(a, b)))
            for e, p in self.occurrence_edges:
                a, b = index[(ENTITY, e)], index[(PASSAGE, p)]
                pairs.add((min(a, b), max(a, b)))
            for pair in self.synonymy_edges:
                u, v = sorted(pair)
                a, b = index[(ENTITY, u)], index[(ENTITY, v)]
                pairs.add((min(a, b), max(a, b)))
            neighbors: list[list[int]] = [[] for _ in nodes]
            for a, b in pairs:
                neighbors[a].append(b)
                neighbors[b].append(a)
            src = np.array([a for a, nbrs in enumerate(neighbors) for _ in nbrs],
                           dtype=np.int64)
            dst = np.array([b for nbrs in neighbors for b in nbrs], dtype=np.int64)
            degree = np.array([len(nbrs) for nbrs in neighbors], dtype=np.float64)
            self._adjacency = (nodes, index, src, dst, degree)
        return self._adjacency


def build_graph(corpus: Corpus, facts: Iterable[Fact], encoder: Encoder,
                tau: float = 0.8) -> HeteroGraph:
    """Assemble nodes and all three edge kinds from extracted facts."""
    if not 0 < tau <= 1:
        raise ValueError("tau must lie in (0, 1]")
    canonical: dict[str, str] = {}

    def canon(name: str) -> str:
        key = name.lower()
        if key not in canonical:
            canonical[key] = name
        return canonical[key]

    relation_edges = set()
    occurrence_edges = set()
    for fact in facts:
        if fact.source_passage_id not in corpus:
            raise UnknownSourcePassageError(
                f"fact source {fact.source_passage_id!r} not in corpus")
        h, t = canon(fact.head), canon(fact.tail)
        relation_edges.add((h, t, fact.relation))
        occurrence_edges.add((h, fact.source_passage_id))
        occurrence_edges.add((t, fact.source_passage_id))

    entities = sorted(canonical.values())
    synonymy_edges = set()
    if entities:
        embeddings = np.stack([encoder.encode(e) for e in entities])
        norms = np.linalg.norm(embeddings, axis=1)
        safe = np.where(norms == 0.0, 1.0, norms)
        unit = embeddings / safe[:, None]
        sims = unit @ unit.T
        upper = np.triu(sims >= tau, k=1)
        for i, j in zip(*np.nonzero(upper)):
            synonymy_edges.add(frozenset((entities[int(i)], entities[int(j)])))

    return HeteroGraph(entity_nodes=set(entities),
                       passage_nodes={p.id for p in corpus},
                       relation_edges=relation_edges,
                       occurrence_edges=occurrence_edges,
                       synonymy_edges=synonymy_edges)


def embed_facts(facts: list[Fact], encoder: Encoder) -> list[Fact]:
    """Attach embeddings of the rendered "head relation tail" text."""
    for fact in facts:
        fact.embedding = encoder.encode(fact.render())
    return facts


def extract_corpus_facts(corpus: Corpus, openie: OpenIE) -> list[Fact]:
    facts = []
    for passage in corpus:
        facts.extend(openie.extract_facts(passage))
    return facts


def save_facts(facts: list[Fact], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for f in facts:
            fh.write(json.dumps({"head": f.head, "relation": f.relation,
                                 "tail": f.tail,
                                 "source_passage_id": f.source_passage_id}) + "\n")


def load_facts(path: str) -> list[Fact]:
    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    facts = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            facts.append(Fact(head=obj["head"], relation=obj["relation"],
                              tail=obj["tail"],
                              source_passage_id=obj["source_passage_id"]))
    return facts


def persist_graph(graph: HeteroGraph, path: str) -> None:
    """JSON Lines sections: header, then nodes, then each edge kind."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"record": "header", "format": "synroute-graph",
                             "version": 1}) + "\n")
        for e in sorted(graph.entity_nodes):
            fh.write(json.dumps({"record": "entity", "name": e}) + "\n")
        for p in sorted(graph.passage_nodes):
            fh.write(json.dumps({"record": "passage", "id": p}) + "\n")
        for h, t, label in sorted(graph.relation_edges):
            fh.write(json.dumps({"record": "relation", "head": h, "tail": t,
                                 "label": label}) + "\n")
        for e, p in sorted(graph.occurrence_edges):
            fh.write(json.dumps({"record": "occurrence", "entity": e,
                                 "passage": p}) + "\n")
        for pair in sorted(graph.synonymy_edges, key=sorted):
            a, b = sorted(pair)
            fh.write(json.dumps({"record": "synonymy", "a": a, "b": b}) + "\n")


def load_graph(path: str) -> HeteroGraph:
    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    entity_nodes: set[str] = set()
    passage_nodes: set[str] = set()
    relation_edges = set()
    occurrence_edges = set()
    synonymy_edges = set()
    with open(path, encoding="utf-8") as fh:
        lines = [line for line in fh if line.strip()]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"unreadable header: {exc}") from None
    if header.get("format") != "synroute-graph" or header.get("version") != 1:
        raise GraphFormatError("unrecognized graph file header")
    for line_no, line in enumerate(lines[1:], start=2):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"line {line_no}: {exc}") from None
        kind = obj.get("record")
        if kind == "entity":
            entity_nodes.add(obj["name"])
        elif kind == "passage":
            passage_nodes.add(obj["id"])
        elif kind == "relation":
            relation_edges.add((obj["head"], obj["tail"], obj["label"]))
        elif kind == "occurrence":
            occurrence_edges.add((obj["entity"], obj["passage"]))
        elif kind == "synonymy":
            synonymy_edges.add(frozenset((obj["a"], obj["b"])))
        else:
            raise GraphFormatError(f"line {line_no}: unknown record kind {kind!r}")
    return HeteroGraph(entity_nodes, passage_nodes, relation_edges,
                       occurrence_edges, synonymy_edges)
