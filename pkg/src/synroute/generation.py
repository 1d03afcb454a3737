"""Answer generation and answer judging interfaces with deterministic mocks.

The extractive mock generator returns the shortest context sentence with
maximal distinct-word overlap with the question; the mock judge defers to
contain-match. Real LLM backends plug in behind the same protocols.
"""

from __future__ import annotations

import re
from typing import Protocol, runtime_checkable

import httpx

from .errors import JudgeUnavailableError

_WORD_RE = re.compile(r"[a-z0-9]+")
_SENT_SPLIT = re.compile(r"(?<=[.!?])\s+|\n+")

NO_ANSWER = "no answer"


def _words(text: str) -> set[str]:
    return set(_WORD_RE.findall(text.lower()))


@runtime_checkable
class Generator(Protocol):
    def generate(self, question: str, context: str) -> str: ...


class ExtractiveGenerator:
    """Picks the context sentence that best overlaps the question.

    Overlap counts distinct shared lowercase words; ties prefer the shorter
    sentence, then the earlier one. An empty context yields "no answer".
    """

    def generate(self, question: str, context: str) -> str:
        sentences = [s.strip() for s in _SENT_SPLIT.split(context) if s.strip()]
        if not sentences:
            return NO_ANSWER
        q_words = _words(question)
        best = None
        best_key = None
        for i, sent in enumerate(sentences):
            overlap = len(q_words & _words(sent))
            key = (-overlap, len(sent), i)
            if best_key is None or key < best_key:
                best, best_key = sent, key
        return best


def normalize_answer(text: str) -> str:
    return " ".join(text.lower().split())


def contain_match(prediction: str, golds) -> int:
    """1 iff any normalized gold answer is a substring of the prediction."""
    pred = normalize_answer(prediction)
    for gold in golds:
        g = normalize_answer(gold)
        if g and g in pred:
            return 1
    return 0


@runtime_checkable
class Judge(Protocol):
    def semantic_accuracy(self, question: str, golds, prediction: str) -> int: ...


class ContainMatchJudge:
    def semantic_accuracy(self, question: str, golds, prediction: str) -> int:
        return contain_match(prediction, golds)


class HttpJudge:
    """Delegates judging to an external service; failures surface as
    JudgeUnavailableError rather than a silent zero."""

    def __init__(self, base_url: str, client: httpx.Client | None = None):
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=10.0)

    def semantic_accuracy(self, question: str, golds, prediction: str) -> int:
        try:
            resp = self._client.post(f"{self.base_url}/judge", json={
                "question": question,
                "golds": list(golds),
                "prediction": prediction,
            })
            resp.raise_for_status()
            return int(resp.json()["correct"])
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            raise JudgeUnavailableError(f"judge at {self.base_url} failed: {exc}") from None
