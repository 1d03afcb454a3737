import json

import pytest

from synroute.corpus import (
    Corpus,
    Passage,
    RankedList,
    load_corpus,
    load_queries,
    pack_context,
    write_corpus,
)
from synroute.errors import (
    DuplicateIdError,
    MalformedLineError,
    MissingFileError,
    UnknownPassageIdError,
)


def write_lines(path, rows):
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")


def test_load_corpus_preserves_order(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_lines(path, [
        {"id": "p1", "title": "A", "text": "alpha"},
        {"id": "p2", "title": "B", "text": "beta"},
    ])
    corpus = load_corpus(str(path))
    assert len(corpus) == 2
    assert corpus.ids() == ["p1", "p2"]
    assert corpus.get("p2").text == "beta"


def test_load_corpus_empty_file(tmp_path):
    path = tmp_path / "corpus.jsonl"
    path.write_text("", encoding="utf-8")
    assert len(load_corpus(str(path))) == 0


def test_load_corpus_duplicate_id(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_lines(path, [
        {"id": "p1", "title": "A", "text": "alpha"},
        {"id": "p1", "title": "B", "text": "beta"},
    ])
    with pytest.raises(DuplicateIdError) as err:
        load_corpus(str(path))
    assert err.value.duplicate_id == "p1"


def test_load_corpus_missing_file(tmp_path):
    with pytest.raises(MissingFileError):
        load_corpus(str(tmp_path / "absent.jsonl"))


def test_load_corpus_rejects_blank_text(tmp_path):
    path = tmp_path / "corpus.jsonl"
    write_lines(path, [{"id": "p1", "title": "A", "text": "   "}])
    with pytest.raises(MalformedLineError):
        load_corpus(str(path))


def test_corpus_roundtrip(tmp_path):
    original = Corpus([
        Passage("p1", "One", "first text"),
        Passage("p2", "Two", "second text"),
    ])
    path = tmp_path / "out.jsonl"
    write_corpus(original, str(path))
    loaded = load_corpus(str(path))
    assert [(p.id, p.title, p.text) for p in loaded] == \
        [(p.id, p.title, p.text) for p in original]


def test_load_queries_table_fixture_line(tmp_path):
    path = tmp_path / "queries.jsonl"
    write_lines(path, [{
        "id": "q1",
        "question": "When is season 8 for game of thrones?",
        "answers": ["2019"],
    }])
    queries = load_queries(str(path))
    assert len(queries) == 1
    assert queries[0].gold_answers == ("2019",)
    assert queries[0].gold_passage_ids == ()


def test_load_queries_defaults(tmp_path):
    path = tmp_path / "queries.jsonl"
    write_lines(path, [{"id": "q1", "question": "Why?"}])
    q = load_queries(str(path))[0]
    assert q.gold_answers == ()
    assert q.gold_passage_ids == ()


def test_load_queries_malformed_line(tmp_path):
    path = tmp_path / "queries.jsonl"
    path.write_text("not json\n", encoding="utf-8")
    with pytest.raises(MalformedLineError) as err:
        load_queries(str(path))
    assert err.value.line_no == 1


@pytest.fixture()
def small_corpus():
    return Corpus([
        Passage("p1", "First", "aaaa bbbb"),
        Passage("p2", "Second", "cccc dddd"),
        Passage("p3", "Third", "eeee ffff"),
    ])


def test_pack_context_limits_passages(small_corpus):
    ranked = RankedList(entries=(("p1", 3.0), ("p2", 2.0), ("p3", 1.0)))
    packed = pack_context(small_corpus, ranked, max_passages=2, max_chars=1000)
    assert packed == "[First]\naaaa bbbb\n\n[Second]\ncccc dddd\n\n"
    assert "Third" not in packed


def test_pack_context_truncates_first_passage(small_corpus):
    ranked = RankedList(entries=(("p1", 1.0),))
    packed = pack_context(small_corpus, ranked, max_passages=5, max_chars=10)
    assert packed == "[First]\naa"
    assert len(packed) == 10


def test_pack_context_unknown_id(small_corpus):
    ranked = RankedList(entries=(("nope", 1.0),))
    with pytest.raises(UnknownPassageIdError):
        pack_context(small_corpus, ranked, max_passages=1, max_chars=100)


def test_pack_context_never_exceeds_budget(small_corpus):
    import random

    rng = random.Random(7)
    for _ in range(100):
        ids = rng.sample(["p1", "p2", "p3"], k=rng.randint(1, 3))
        ranked = RankedList(entries=tuple((pid, float(3 - i)) for i, pid in enumerate(ids)))
        budget = rng.randint(0, 60)
        packed = pack_context(small_corpus, ranked, max_passages=3, max_chars=budget)
        assert len(packed) <= budget


def test_ranked_list_invariants():
    with pytest.raises(ValueError):
        RankedList(entries=(("a", 1.0), ("a", 0.5)))
    with pytest.raises(ValueError):
        RankedList(entries=(("a", 0.5), ("b", 1.0)))
