"""Deterministic end-to-end fixtures.

Three corpora back the pipeline/acceptance tests:

* the mixed workload: 25 shallow queries ("What color is the X?" and
  season-premiere questions with stacked prepositional phrases) answerable
  by lexical overlap, and 25 nested queries (relic-maker homeland questions
  with a relative clause, film-director death dates with of-phrase chains)
  whose gold passage is reachable only through a two-hop fact chain and is
  diluted with filler so dense retrieval ranks it outside the top five;
* the case-study corpus: the season-8 premiere fixture plus the film
  director death-date fixture with decoy director biographies;
* a size-1000 synthetic corpus for latency measurements.

Parses are built from two hand-written templates (shallow copular question,
deep question with a relative clause) instantiated per query.
"""

from __future__ import annotations

import random

from synroute.corpus import Corpus, Passage, Query
from synroute.parses import ParsedQuery, parse_record_to_query

SIMPLE_NOUNS = [
    "lamp", "rug", "door", "kettle", "bench", "fence", "ladder", "basket",
    "mirror", "candle", "pillow", "curtain", "shovel", "bucket", "wagon",
    "barrel", "anvil", "saddle", "plough", "chisel", "mallet", "spindle",
    "teapot", "lantern", "stool",
]
COLORS = ["blue", "red", "green", "amber", "violet"]

RELICS = ["Karvex", "Tolvrin", "Madrix", "Quellor", "Vantor", "Zephrin",
          "Moridal", "Galvek", "Tharniq", "Velmora", "Drossin", "Yelvark",
          "Pindral", "Sorvex", "Lumbrax", "Corvet", "Nimbrel", "Tarquel",
          "Ulvrin", "Wextor", "Favrill", "Hastrel", "Jorvek", "Brandek",
          "Ostrev"]
PERSONS = ["Veylan", "Dorvic", "Malrin", "Quenby", "Sarpel", "Tovald",
           "Umbrel", "Vastri", "Wendor", "Yarvik", "Zelbin", "Arpent",
           "Bormil", "Cryden", "Delmar", "Evrik", "Fandor", "Gorvin",
           "Hilmar", "Irvent", "Jaldor", "Kelvim", "Lormek", "Mirvan",
           "Norvel"]
HOMELANDS = ["Tarniva", "Bellmor", "Crestin", "Durnwald", "Elvora",
             "Fernholt", "Grimsby", "Halvern", "Islemoor", "Jorwick",
             "Kestrel", "Lowdale", "Marwyn", "Nortassa", "Opaline",
             "Penrith", "Quorland", "Ravenholt", "Selwick", "Thornby",
             "Umberly", "Verdona", "Wyndham", "Yelverton", "Zarholm"]

FILLER_WORDS = [
    "villagers", "speak", "fondly", "about", "quiet", "workshops", "near",
    "misty", "hollows", "travelers", "trade", "stories", "beside", "warm",
    "hearths", "every", "evening", "farmers", "mend", "their", "tools",
    "under", "pale", "skies", "children", "gather", "acorns", "along",
    "winding", "paths",
]

SHOW_PAIRS = [
    ("ember", "ashwood"), ("tides", "harrowgate"), ("crowns", "veldenmoor"),
    ("sparrows", "millbrook"), ("glaciers", "norwild"), ("orchards", "pellam"),
    ("beacons", "yarrowfen"), ("harvests", "coldbrook"), ("riders", "skelwith"),
    ("embassies", "tarnow"),
]
SHOW_MONTHS = ["January", "March", "June", "August", "October"]

FILMS = ["Valcrest", "Dunmore", "Keldawn", "Morvane", "Ashfall", "Greyhollow",
         "Stonewake", "Blackmere", "Ironvale", "Thornmoor"]
DIRECTORS = ["Castellan", "Bergeron", "Almeida", "Novotny", "Laurent",
             "Petrov", "Okafor", "Lindqvist", "Moreau", "Tanaka"]


def conllu_row(idx, form, lemma, upos, head, deprel):
    return "\t".join([str(idx), form, lemma, upos, "_", "_", str(head), deprel,
                      "_", "_"])


def simple_query_record(qid: str, noun: str) -> dict:
    """'What color is the {noun}?' — shallow copular question."""
    conllu = "\n".join([
        conllu_row(1, "What", "what", "DET", 2, "det"),
        conllu_row(2, "color", "color", "NOUN", 0, "root"),
        conllu_row(3, "is", "be", "AUX", 2, "cop"),
        conllu_row(4, "the", "the", "DET", 5, "det"),
        conllu_row(5, noun, noun, "NOUN", 2, "nsubj"),
        conllu_row(6, "?", "?", "PUNCT", 2, "punct"),
    ])
    tree = (f"(ROOT (SBARQ (WHNP (WDT What) (NN color)) (SQ (VBZ is)"
            f" (NP (DT the) (NN {noun}))) (. ?)))")
    return {"id": qid, "conllu": conllu, "constituency": tree, "entities": []}


def season_query_record(qid: str, number: str, noun_a: str, noun_b: str) -> dict:
    """'When is season {n} for {a} of {b}?' — copular question with stacked
    prepositional modifiers but no embedded clause."""
    conllu = "\n".join([
        conllu_row(1, "When", "when", "ADV", 0, "root"),
        conllu_row(2, "is", "be", "AUX", 1, "cop"),
        conllu_row(3, "season", "season", "NOUN", 1, "nsubj"),
        conllu_row(4, number, number, "NUM", 3, "nummod"),
        conllu_row(5, "for", "for", "ADP", 6, "case"),
        conllu_row(6, noun_a, noun_a, "NOUN", 3, "nmod"),
        conllu_row(7, "of", "of", "ADP", 8, "case"),
        conllu_row(8, noun_b, noun_b, "NOUN", 6, "nmod"),
        conllu_row(9, "?", "?", "PUNCT", 1, "punct"),
    ])
    tree = (f"(ROOT (SBARQ (WHADVP (WRB When)) (SQ (VBZ is) (NP (NP (NN season)"
            f" (CD {number})) (PP (IN for) (NP (NP (NN {noun_a})) (PP (IN of)"
            f" (NP (NNS {noun_b}))))))) (. ?)))")
    return {"id": qid, "conllu": conllu, "constituency": tree, "entities": []}


def film_query_record(qid: str, film: str) -> dict:
    """'What is the date of death of the director of the film {F}?' —
    stacked of-phrases ending in an appositive name."""
    conllu = "\n".join([
        conllu_row(1, "What", "what", "PRON", 0, "root"),
        conllu_row(2, "is", "be", "AUX", 1, "cop"),
        conllu_row(3, "the", "the", "DET", 4, "det"),
        conllu_row(4, "date", "date", "NOUN", 1, "nsubj"),
        conllu_row(5, "of", "of", "ADP", 6, "case"),
        conllu_row(6, "death", "death", "NOUN", 4, "nmod"),
        conllu_row(7, "of", "of", "ADP", 9, "case"),
        conllu_row(8, "the", "the", "DET", 9, "det"),
        conllu_row(9, "director", "director", "NOUN", 6, "nmod"),
        conllu_row(10, "of", "of", "ADP", 12, "case"),
        conllu_row(11, "the", "the", "DET", 12, "det"),
        conllu_row(12, "film", "film", "NOUN", 9, "nmod"),
        conllu_row(13, film, film, "PROPN", 12, "appos"),
        conllu_row(14, "?", "?", "PUNCT", 1, "punct"),
    ])
    tree = (f"(ROOT (SBARQ (WHNP (WP What)) (SQ (VBZ is) (NP (NP (DT the)"
            f" (NN date)) (PP (IN of) (NP (NP (NN death)) (PP (IN of)"
            f" (NP (NP (DT the) (NN director)) (PP (IN of) (NP (NP (DT the)"
            f" (NN film)) (NP (NNP {film})))))))))) (. ?)))")
    return {"id": qid, "conllu": conllu, "constituency": tree,
            "entities": [{"text": film, "type": "OTHER", "start": 12, "end": 13}]}


def complex_query_record(qid: str, relic: str) -> dict:
    """'What is the homeland of the person who crafted the relic {R}?' —
    nested prepositional chain plus a relative clause."""
    conllu = "\n".join([
        conllu_row(1, "What", "what", "PRON", 0, "root"),
        conllu_row(2, "is", "be", "AUX", 1, "cop"),
        conllu_row(3, "the", "the", "DET", 4, "det"),
        conllu_row(4, "homeland", "homeland", "NOUN", 1, "nsubj"),
        conllu_row(5, "of", "of", "ADP", 7, "case"),
        conllu_row(6, "the", "the", "DET", 7, "det"),
        conllu_row(7, "person", "person", "NOUN", 4, "nmod"),
        conllu_row(8, "who", "who", "PRON", 9, "nsubj"),
        conllu_row(9, "crafted", "craft", "VERB", 7, "acl:relcl"),
        conllu_row(10, "the", "the", "DET", 12, "det"),
        conllu_row(11, "relic", "relic", "NOUN", 12, "compound"),
        conllu_row(12, relic, relic, "PROPN", 9, "obj"),
        conllu_row(13, "?", "?", "PUNCT", 1, "punct"),
    ])
    tree = (f"(ROOT (SBARQ (WHNP (WP What)) (SQ (VBZ is) (NP (NP (DT the)"
            f" (NN homeland)) (PP (IN of) (NP (NP (DT the) (NN person))"
            f" (SBAR (WHNP (WP who)) (S (VP (VBD crafted) (NP (DT the)"
            f" (NN relic) (NNP {relic}))))))))) (. ?)))")
    return {"id": qid, "conllu": conllu, "constituency": tree,
            "entities": [{"text": relic, "type": "OTHER", "start": 11, "end": 12}]}


def _filler_sentences(rng: random.Random, count: int) -> str:
    out = []
    for _ in range(count):
        words = rng.sample(FILLER_WORDS, k=8)
        out.append(" ".join(words).capitalize() + ".")
    return " ".join(out)


def build_workload() -> tuple[Corpus, list[Query], dict[str, ParsedQuery]]:
    """The 50-query mixed corpus: see module docstring."""
    rng = random.Random(20240601)
    passages: list[Passage] = []
    queries: list[Query] = []
    parses: dict[str, ParsedQuery] = {}

    for i, noun in enumerate(SIMPLE_NOUNS[:15]):
        color = COLORS[i % len(COLORS)]
        pid = f"s{i:02d}-{noun}"
        text = (f"The {noun} is {color}. It sits in the corner of the study. "
                f"{_filler_sentences(rng, 1)}")
        passages.append(Passage(pid, f"The {noun}", text))
        qid = f"q-simple-{i:02d}"
        queries.append(Query(id=qid, text=f"What color is the {noun}?",
                             gold_answers=(color,), gold_passage_ids=(pid,)))
        parses[qid] = parse_record_to_query(simple_query_record(qid, noun))

    for j, (noun_a, noun_b) in enumerate(SHOW_PAIRS):
        number = str(2 + j)
        month = SHOW_MONTHS[j % len(SHOW_MONTHS)]
        year = str(1975 + j)
        pid = f"v{j:02d}-show"
        text = (f"Season {number} of {noun_a} of {noun_b} is scheduled to "
                f"premiere in {month} {year}. {_filler_sentences(rng, 1)}")
        passages.append(Passage(pid, f"{noun_a} of {noun_b} (season {number})", text))
        qid = f"q-season-{j:02d}"
        queries.append(Query(id=qid,
                             text=f"When is season {number} for {noun_a} of {noun_b}?",
                             gold_answers=(year,), gold_passage_ids=(pid,)))
        parses[qid] = parse_record_to_query(season_query_record(qid, number, noun_a, noun_b))

    for j, (film, director) in enumerate(zip(FILMS, DIRECTORS)):
        month = SHOW_MONTHS[(j + 2) % len(SHOW_MONTHS)]
        year = str(1833 + j)
        pid_film = f"w{j:02d}-film"
        pid_dir = f"x{j:02d}-director"
        film_text = (f"{film} is a crime thriller film from the old studios. "
                     f"{director} directed {film}. {_filler_sentences(rng, 1)}")
        dir_text = (f"{_filler_sentences(rng, 3)} "
                    f"The date of death of {director} is {month} 4, {year}. "
                    f"{_filler_sentences(rng, 3)}")
        passages.append(Passage(pid_film, f"{film} (film)", film_text))
        passages.append(Passage(pid_dir, director, dir_text))
        qid = f"q-film-{j:02d}"
        queries.append(Query(
            id=qid,
            text=f"What is the date of death of the director of the film {film}?",
            gold_answers=(year,), gold_passage_ids=(pid_dir,)))
        parses[qid] = parse_record_to_query(film_query_record(qid, film))

    for i, (relic, person, homeland) in enumerate(zip(RELICS[:15], PERSONS[:15], HOMELANDS[:15])):
        pid_relic = f"t{i:02d}-relic"
        pid_person = f"u{i:02d}-person"
        relic_text = (f"{relic} was crafted by {person}. "
                      f"The relic rests in a vault. {_filler_sentences(rng, 1)}")
        person_text = (f"{_filler_sentences(rng, 3)} "
                       f"The homeland of {person} is {homeland}. "
                       f"{_filler_sentences(rng, 3)}")
        passages.append(Passage(pid_relic, relic, relic_text))
        passages.append(Passage(pid_person, person, person_text))
        qid = f"q-complex-{i:02d}"
        queries.append(Query(
            id=qid,
            text=f"What is the homeland of the person who crafted the relic {relic}?",
            gold_answers=(homeland,), gold_passage_ids=(pid_person,)))
        parses[qid] = parse_record_to_query(complex_query_record(qid, relic))

    return Corpus(passages), queries, parses


def case_query_1_record() -> dict:
    """'When is season 8 for game of thrones?'"""
    conllu = "\n".join([
        conllu_row(1, "When", "when", "ADV", 0, "root"),
        conllu_row(2, "is", "be", "AUX", 1, "cop"),
        conllu_row(3, "season", "season", "NOUN", 1, "nsubj"),
        conllu_row(4, "8", "8", "NUM", 3, "nummod"),
        conllu_row(5, "for", "for", "ADP", 6, "case"),
        conllu_row(6, "game", "game", "NOUN", 3, "nmod"),
        conllu_row(7, "of", "of", "ADP", 8, "case"),
        conllu_row(8, "thrones", "throne", "NOUN", 6, "nmod"),
        conllu_row(9, "?", "?", "PUNCT", 1, "punct"),
    ])
    tree = ("(ROOT (SBARQ (WHADVP (WRB When)) (SQ (VBZ is) (NP (NP (NN season)"
            " (CD 8)) (PP (IN for) (NP (NP (NN game)) (PP (IN of)"
            " (NP (NNS thrones))))))) (. ?)))")
    return {"id": "case-single", "conllu": conllu, "constituency": tree,
            "entities": []}


def case_query_2_record() -> dict:
    """'What is the date of death of the director of the film The
    Organization?'"""
    conllu = "\n".join([
        conllu_row(1, "What", "what", "PRON", 0, "root"),
        conllu_row(2, "is", "be", "AUX", 1, "cop"),
        conllu_row(3, "the", "the", "DET", 4, "det"),
        conllu_row(4, "date", "date", "NOUN", 1, "nsubj"),
        conllu_row(5, "of", "of", "ADP", 6, "case"),
        conllu_row(6, "death", "death", "NOUN", 4, "nmod"),
        conllu_row(7, "of", "of", "ADP", 9, "case"),
        conllu_row(8, "the", "the", "DET", 9, "det"),
        conllu_row(9, "director", "director", "NOUN", 6, "nmod"),
        conllu_row(10, "of", "of", "ADP", 12, "case"),
        conllu_row(11, "the", "the", "DET", 12, "det"),
        conllu_row(12, "film", "film", "NOUN", 9, "nmod"),
        conllu_row(13, "The", "the", "DET", 14, "det"),
        conllu_row(14, "Organization", "Organization", "PROPN", 12, "appos"),
        conllu_row(15, "?", "?", "PUNCT", 1, "punct"),
    ])
    tree = ("(ROOT (SBARQ (WHNP (WP What)) (SQ (VBZ is) (NP (NP (DT the)"
            " (NN date)) (PP (IN of) (NP (NP (NN death)) (PP (IN of)"
            " (NP (NP (DT the) (NN director)) (PP (IN of) (NP (NP (DT the)"
            " (NN film)) (NP (DT The) (NNP Organization)))))))))) (. ?)))")
    return {"id": "case-multi", "conllu": conllu, "constituency": tree,
            "entities": [{"text": "The Organization", "type": "OTHER",
                          "start": 12, "end": 14}]}


def case_study_parse_records() -> list[dict]:
    return [case_query_1_record(), case_query_2_record()]


def workload_parse_records() -> list[dict]:
    records = []
    for i, noun in enumerate(SIMPLE_NOUNS[:15]):
        records.append(simple_query_record(f"q-simple-{i:02d}", noun))
    for j, (noun_a, noun_b) in enumerate(SHOW_PAIRS):
        records.append(season_query_record(f"q-season-{j:02d}", str(2 + j),
                                           noun_a, noun_b))
    for j, (film, _d) in enumerate(zip(FILMS, DIRECTORS)):
        records.append(film_query_record(f"q-film-{j:02d}", film))
    for i, relic in enumerate(RELICS[:15]):
        records.append(complex_query_record(f"q-complex-{i:02d}", relic))
    return records


DECOY_DIRECTORS = [
    ("zz-brocka", "Lino Brocka", "April 3, 1939"),
    ("zz-fox", "Wallace Fox", "March 9, 1895"),
    ("zz-douglas", "Gordon Douglas", "December 15, 1907"),
    ("zz-ford", "John Ford", "February 1, 1894"),
    ("zz-walsh", "Raoul Walsh", "March 11, 1887"),
]


def build_case_study() -> tuple[Corpus, list[Query], dict[str, ParsedQuery]]:
    passages = [
        Passage("ax1", "Creek stones",
                "Mossy stones line shallow creeks. Dragonflies hover above reeds."),
        Passage("ax2", "Meadow light",
                "Pale light settles over quiet meadows. Crickets hum after dusk."),
        Passage("ax3", "Harbor mist",
                "Grey mist drifts across empty harbors. Gulls circle weathered posts."),
        Passage("got", "Game of Thrones (season 8)",
                "Game of Thrones is a fantasy drama television series. "
                "Season 8 of Game of Thrones is scheduled to premiere in April 2019."),
        Passage("twd", "The Walking Dead (season 8)",
                "The eighth installment of The Walking Dead marked the first "
                "crossover with a companion show."),
        Passage("org", "The Organization (film)",
                "The Organization is a 1971 crime thriller film starring "
                "Sidney Poitier as Virgil Tibbs. Don Medford directed The Organization."),
        Passage("medford", "Don Medford",
                "Don Medford was born Donald Muller on November 26, 1917. "
                "Don Medford worked in television for decades. "
                "He led many long productions across busy years. "
                "The date of death of Don Medford is December 12, 2012."),
    ]
    for pid, name, birth in DECOY_DIRECTORS:
        passages.append(Passage(
            pid, name,
            f"{name} was a noted film director. {name} directed many film "
            f"productions. The date of birth of {name} is {birth}."))
    queries = [
        Query(id="case-single", text="When is season 8 for game of thrones?",
              gold_answers=("2019",), gold_passage_ids=("got",)),
        Query(id="case-multi",
              text="What is the date of death of the director of the film The Organization?",
              gold_answers=("December 12, 2012",), gold_passage_ids=("medford",)),
    ]
    parses = {r["id"]: parse_record_to_query(r) for r in case_study_parse_records()}
    return Corpus(passages), queries, parses


def build_latency_corpus(n_passages: int = 1000) -> tuple[Corpus, list[Query]]:
    """Synthetic chained corpus: each passage links two entities and chains
    to the next, so the graph is large and connected."""
    rng = random.Random(99)
    passages = []
    for i in range(n_passages):
        a, b, c = f"Enta{i:04d}", f"Entb{i:04d}", f"Enta{(i + 1) % n_passages:04d}"
        filler = " ".join(rng.sample(FILLER_WORDS, k=10))
        text = f"{a} links {b}. {b} guards {c}. {filler}."
        passages.append(Passage(f"lp{i:04d}", f"Record {i}", text))
    queries = [Query(id=f"lq{j:03d}", text=f"Where is Enta{(j * 17) % n_passages:04d} now?")
               for j in range(60)]
    return Corpus(passages), queries
