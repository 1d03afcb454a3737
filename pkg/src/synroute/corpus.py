"""Corpus units: passages, queries, ranked lists, and context packing.

Corpora and query sets are UTF-8 JSON Lines files, one object per line:

    corpus.jsonl:  {"id": ..., "title": ..., "text": ...}
    queries.jsonl: {"id": ..., "question": ..., "answers": [...], "gold_passage_ids": [...]}

A loaded Corpus is immutable and safe to share across query workers.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .errors import (
    DuplicateIdError,
    MalformedLineError,
    MissingFileError,
    UnknownPassageIdError,
)


@dataclass(frozen=True)
class Passage:
    id: str
    title: str
    text: str


@dataclass(frozen=True)
class Query:
    id: str
    text: str
    gold_answers: tuple[str, ...] = ()
    gold_passage_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class RankedList:
    """Ordered (passage_id, score) pairs with non-increasing scores."""

    entries: tuple[tuple[str, float], ...]

    def __post_init__(self):
        ids = [pid for pid, _ in self.entries]
        if len(set(ids)) != len(ids):
            raise ValueError("ranked list contains duplicate passage ids")
        scores = [s for _, s in self.entries]
        for a, b in zip(scores, scores[1:]):
            if b > a:
                raise ValueError("ranked list scores must be non-increasing")

    def ids(self) -> list[str]:
        return [pid for pid, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


class Corpus:
    """Immutable passage collection preserving file order."""

    def __init__(self, passages: list[Passage]):
        self._passages = list(passages)
        self._by_id: dict[str, Passage] = {}
        for p in self._passages:
            if p.id in self._by_id:
                raise DuplicateIdError(p.id)
            self._by_id[p.id] = p

    def __len__(self) -> int:
        return len(self._passages)

    def __iter__(self):
        return iter(self._passages)

    def __contains__(self, passage_id: str) -> bool:
        return passage_id in self._by_id

    def get(self, passage_id: str) -> Passage:
        try:
            return self._by_id[passage_id]
        except KeyError:
            raise UnknownPassageIdError(f"unknown passage id: {passage_id!r}") from None

    def ids(self) -> list[str]:
        return [p.id for p in self._passages]


def _iter_jsonl(path: str):
    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLineError(line_no, str(exc)) from None
            if not isinstance(obj, dict):
                raise MalformedLineError(line_no, "expected a JSON object")
            yield line_no, obj


def load_corpus(path: str) -> Corpus:
    """Read a corpus.jsonl file, preserving order and rejecting duplicate ids."""
    passages = []
    seen = set()
    for line_no, obj in _iter_jsonl(path):
        try:
            pid, title, text = str(obj["id"]), str(obj["title"]), str(obj["text"])
        except KeyError as exc:
            raise MalformedLineError(line_no, f"missing key {exc}") from None
        if not text.strip():
            raise MalformedLineError(line_no, "passage text is empty")
        if pid in seen:
            raise DuplicateIdError(pid)
        seen.add(pid)
        passages.append(Passage(id=pid, title=title, text=text))
    return Corpus(passages)


def write_corpus(corpus: Corpus, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in corpus:
            fh.write(json.dumps({"id": p.id, "title": p.title, "text": p.text}) + "\n")


def load_queries(path: str) -> list[Query]:
    """Read a queries.jsonl file; missing optional fields default to empty lists."""
    queries = []
    for line_no, obj in _iter_jsonl(path):
        try:
            qid, question = str(obj["id"]), str(obj["question"])
        except KeyError as exc:
            raise MalformedLineError(line_no, f"missing key {exc}") from None
        answers = tuple(str(a) for a in obj.get("answers", []))
        gold_ids = tuple(str(g) for g in obj.get("gold_passage_ids", []))
        queries.append(Query(id=qid, text=question, gold_answers=answers, gold_passage_ids=gold_ids))
    return queries


def write_queries(queries: list[Query], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for q in queries:
            fh.write(json.dumps({
                "id": q.id,
                "question": q.text,
                "answers": list(q.gold_answers),
                "gold_passage_ids": list(q.gold_passage_ids),
            }) + "\n")


def pack_context(corpus: Corpus, ranked: RankedList, max_passages: int, max_chars: int) -> str:
    """Concatenate the top passages as "[title]\\n{text}\\n\\n" blocks.

    At most max_passages blocks are emitted and the result never exceeds
    max_chars; the block that crosses the budget is truncated and packing
    stops there.
    """
    out: list[str] = []
    used = 0
    for pid, _ in ranked.entries[:max_passages]:
        passage = corpus.get(pid)
        block = f"[{passage.title}]\n{passage.text}\n\n"
        remaining = max_chars - used
        if remaining <= 0:
            break
        if len(block) > remaining:
            out.append(block[:remaining])
            used += remaining
            break
        out.append(block)
        used += len(block)
    return "".join(out)
