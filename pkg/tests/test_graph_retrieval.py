import numpy as np
import pytest

from synroute.errors import (
    EmptyFactSetError,
    EntityNotInGraphError,
    NoConvergenceError,
    ZeroOccurrenceError,
)
from synroute.graph import ENTITY, PASSAGE, Fact, HeteroGraph

from oracles import oracle_ppr, random_hetero_graph
from synroute.graph_retrieval import (
    DiffusionVector,
    MockReranker,
    PPRConfig,
    ResetVector,
    entity_seed_weights,
    fact_scores,
    graph_search,
    run_ppr,
    select_and_rerank,
)


def fact(head, tail, emb=None, source="p1", relation="rel"):
    f = Fact(head=head, relation=relation, tail=tail, source_passage_id=source)
    f.embedding = np.asarray(emb if emb is not None else [1.0], dtype=float)
    return f


# --- fact scoring -----------------------------------------------------------

def test_fact_scores_minmax():
    q = np.array([1.0])
    facts = [fact("a", "b", [0.2]), fact("c", "d", [0.6]), fact("e", "f", [1.0])]
    assert fact_scores(q, facts) == pytest.approx([0.0, 0.5, 1.0])


def test_fact_scores_all_equal():
    q = np.array([1.0])
    facts = [fact("a", "b", [0.3])] * 3
    assert fact_scores(q, facts).tolist() == [1.0, 1.0, 1.0]


def test_fact_scores_preserves_argmax():
    rng = np.random.default_rng(0)
    q = rng.normal(size=8)
    facts = [fact("a", "b", rng.normal(size=8)) for _ in range(20)]
    raw = np.array([float(q @ f.embedding) for f in facts])
    assert int(np.argmax(fact_scores(q, facts))) == int(np.argmax(raw))


def test_fact_scores_empty():
    with pytest.raises(EmptyFactSetError):
        fact_scores(np.array([1.0]), [])


# --- rerank -------------------------------------------------------------------

def test_mock_reranker_keeps_query_entities():
    a = fact("Don Medford", "The Organization")
    b = fact("Lino Brocka", "Manila")
    kept = select_and_rerank("Who directed The Organization with Don Medford?",
                             [a, b], np.array([1.0, 0.9]), 2, MockReranker())
    assert [f.head for f, _ in kept] == ["Don Medford"]


def test_select_k_larger_than_facts():
    facts = [fact("A", "B"), fact("C", "D")]
    kept = select_and_rerank("A B C D", facts, np.array([0.2, 0.9]), 10,
                             MockReranker())
    assert len(kept) == 2
    assert kept[0][0].head == "C"  # ordered by score


def test_reranker_fallback_keeps_all():
    facts = [fact("A", "B"), fact("C", "D")]
    kept = select_and_rerank("unrelated query", facts, np.array([0.9, 0.2]), 2,
                             MockReranker())
    assert len(kept) == 2


def test_select_tie_break_insertion_order():
    facts = [fact("Quorx", "Blat"), fact("Zimft", "Dworp"), fact("Embick", "Fru")]
    kept = select_and_rerank("unrelated words here", facts,
                             np.array([0.5, 0.5, 0.5]), 2, MockReranker())
    assert [f.head for f, _ in kept] == ["Quorx", "Zimft"]


# --- seed weights ----------------------------------------------------------------

def graph_with_occurrences(occ_counts: dict[str, int]) -> HeteroGraph:
    passages = {f"p{i}" for i in range(1 + max(occ_counts.values(), default=1))}
    occurrence = set()
    for entity, count in occ_counts.items():
        for i in range(count):
            occurrence.add((entity, f"p{i}"))
    return HeteroGraph(set(occ_counts), passages, set(), occurrence, set())


def test_seed_weight_hub_penalty():
    graph = graph_with_occurrences({"star": 4, "rare": 1})
    seeds = entity_seed_weights([(fact("star", "rare"), 0.8)], graph, 1)
    # star: 0.8/4 = 0.2 < rare: 0.8/1, so rare wins the single slot
    assert set(seeds.weights) == {"rare"}
    graph2 = graph_with_occurrences({"star": 4})
    seeds2 = entity_seed_weights([(fact("star", "star"), 0.8)], graph2, 5)
    assert seeds2.weights["star"] == 1.0  # normalized single seed


def test_seed_weight_pre_normalization_value():
    graph = graph_with_occurrences({"a": 4, "b": 1})
    weights = {}
    for f, s in [(fact("a", "b"), 0.8)]:
        for name in (f.head, f.tail):
            weights[name] = s / graph.occurrence_count(name)
    assert weights["a"] == pytest.approx(0.2)


def test_seed_weight_doubling_occurrences_halves_weight():
    g1 = graph_with_occurrences({"a": 2, "z": 1})
    g2 = graph_with_occurrences({"a": 4, "z": 1})
    w1 = 0.9 / g1.occurrence_count("a")
    w2 = 0.9 / g2.occurrence_count("a")
    assert w1 == 2 * w2


def test_seed_weight_last_fact_wins():
    graph = graph_with_occurrences({"a": 1, "b": 1, "c": 1})
    seeds = entity_seed_weights(
        [(fact("a", "b"), 0.9), (fact("a", "c"), 0.4)], graph, 3)
    # entity a was re-visited: weight comes from the second fact (0.4)
    total = 0.4 + 0.9 + 0.4
    assert seeds.weights["a"] == pytest.approx(0.4 / total)
    assert seeds.weights["b"] == pytest.approx(0.9 / total)


def test_seed_weight_normalization():
    graph = graph_with_occurrences({"a": 1, "b": 1})
    seeds = entity_seed_weights([(fact("a", "b"), 0.2)], graph, 2)
    assert seeds.weights["a"] == pytest.approx(0.5)
    assert seeds.weights["b"] == pytest.approx(0.5)
    assert sum(seeds.weights.values()) == pytest.approx(1.0)


def test_seed_weight_unknown_entity():
    graph = graph_with_occurrences({"a": 1})
    with pytest.raises(EntityNotInGraphError):
        entity_seed_weights([(fact("a", "ghost"), 0.5)], graph, 2)


def test_seed_weight_zero_occurrence():
    graph = HeteroGraph({"a", "b"}, {"p0"}, set(), {("a", "p0")}, set())
    with pytest.raises(ZeroOccurrenceError):
        entity_seed_weights([(fact("a", "b"), 0.5)], graph, 2)


def test_seed_weight_topk_lexicographic_ties():
    graph = graph_with_occurrences({"zeta": 1, "alpha": 1, "mid": 1})
    seeds = entity_seed_weights(
        [(fact("zeta", "alpha"), 0.5), (fact("mid", "mid"), 0.5)], graph, 2)
    assert set(seeds.weights) == {"alpha", "mid"}


# --- PPR ----------------------------------------------------------------------

def test_ppr_single_node_fixed_point():
    graph = HeteroGraph({"n"}, set(), set(), set(), set())
    for alpha in (0.15, 0.5, 0.85):
        r = run_ppr(graph, ResetVector({"n": 1.0}), PPRConfig(alpha=alpha))
        assert r.scores[(ENTITY, "n")] == pytest.approx(1.0)


def test_ppr_two_node_closed_form():
    graph = HeteroGraph({"a", "b"}, set(), {("a", "b", "r")}, set(), set())
    r = run_ppr(graph, ResetVector({"a": 1.0}), PPRConfig(alpha=0.5))
    assert r.scores[(ENTITY, "a")] == pytest.approx(2 / 3, abs=1e-9)
    assert r.scores[(ENTITY, "b")] == pytest.approx(1 / 3, abs=1e-9)


def test_ppr_matches_dense_solve():
    rng = np.random.default_rng(7)
    for _ in range(25):
        graph, reset = random_hetero_graph(rng)
        alpha = float(rng.uniform(0.1, 0.9))
        got = run_ppr(graph, ResetVector(reset), PPRConfig(alpha=alpha))
        want = oracle_ppr(graph, reset, alpha)
        for node, value in want.items():
            assert abs(got.scores[node] - value) < 1e-8
        total = sum(got.scores.values())
        assert abs(total - 1.0) < 1e-8
        assert all(v >= 0 for v in got.scores.values())


def test_ppr_path_locality():
    # Closed-form analysis of the 3-path shows r(a) > r(b) needs
    # alpha > 2 - sqrt(3) ~ 0.268; below that the middle node collects more
    # mass than the seed. Asserted for the default and larger resets.
    graph = HeteroGraph({"a", "b", "c"}, set(),
                        {("a", "b", "r"), ("b", "c", "r")}, set(), set())
    for alpha in (0.35, 0.5, 0.8):
        r = run_ppr(graph, ResetVector({"a": 1.0}), PPRConfig(alpha=alpha))
        sa = r.scores[(ENTITY, "a")]
        sb = r.scores[(ENTITY, "b")]
        sc = r.scores[(ENTITY, "c")]
        assert sa > sb > sc


def test_ppr_no_convergence():
    graph = HeteroGraph({"a", "b"}, set(), {("a", "b", "r")}, set(), set())
    with pytest.raises(NoConvergenceError):
        run_ppr(graph, ResetVector({"a": 1.0}),
                PPRConfig(alpha=0.5, tol=1e-300, max_iters=3))


def test_ppr_unknown_seed():
    graph = HeteroGraph({"a"}, set(), set(), set(), set())
    with pytest.raises(EntityNotInGraphError):
        run_ppr(graph, ResetVector({"ghost": 1.0}), PPRConfig())


# --- passage ranking --------------------------------------------------------------

def test_graph_search_restricts_to_passages():
    graph = HeteroGraph({"e"}, {"p1", "p2"}, set(), {("e", "p1")}, set())
    diffusion = DiffusionVector(scores={
        (ENTITY, "e"): 0.6, (PASSAGE, "p1"): 0.3, (PASSAGE, "p2"): 0.1,
    })
    ranked = graph_search(graph, diffusion, 1)
    assert ranked.entries == (("p1", 0.3),)
    assert all(not pid.startswith("e") for pid in ranked.ids())


def test_graph_search_zero_scores_id_order():
    graph = HeteroGraph(set(), {"pb", "pa", "pc"}, set(), set(), set())
    ranked = graph_search(graph, DiffusionVector(scores={}), 3)
    assert ranked.ids() == ["pa", "pb", "pc"]
    assert all(s == 0.0 for _, s in ranked.entries)


def test_graph_search_k_exceeds_passages():
    graph = HeteroGraph(set(), {"p1", "p2"}, set(), set(), set())
    assert len(graph_search(graph, DiffusionVector(scores={}), 99)) == 2
