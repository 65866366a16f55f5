import json

import pytest

from visent.prover import Budget
from visent.retrieval import (TEMPLATES, Corpus, QueryRecord, QueryResult, evaluate,
                              generate_fixture_corpus, load_corpus, load_queries, macro_f1,
                              precision_recall_f1, retrieve, run_query, save_queries,
                              write_corpus)
from visent.semparser import parse
from visent.structure import satisfies
from visent.translator import TranslationMode


@pytest.fixture
def small_corpus(man_hat, one_cat):
    return Corpus({"img_A": man_hat, "img_B": one_cat})


def test_retrieve_examples(small_corpus):
    assert retrieve(small_corpus, QueryRecord("There is a red hat", ["Con"])) == {"img_A"}
    assert retrieve(small_corpus, QueryRecord("No man wears a hat", ["Neg"])) == {"img_B"}
    assert retrieve(Corpus({}), QueryRecord("There is a red hat", ["Con"])) == set()


def test_simple_mode_misses_negative_queries(small_corpus):
    q = QueryRecord("No man wears a hat", ["Neg"], {"img_B"})
    assert retrieve(small_corpus, q, TranslationMode.SIMPLE) == set()


@pytest.mark.parametrize("retrieved, gold, expected", [
    ({"a", "b"}, {"a", "b"}, (1.0, 1.0, 1.0)),
    (set(), {"a"}, (1.0, 0.0, 0.0)),
    ({"a", "b"}, {"a"}, (0.5, 1.0, 2 / 3)),
    ({"b"}, {"a"}, (0.0, 0.0, 0.0)),
    (set(), set(), (1.0, 1.0, 1.0)),
    ({"a"}, set(), (0.0, 1.0, 0.0)),
])
def test_precision_recall_f1(retrieved, gold, expected):
    assert precision_recall_f1(retrieved, gold) == pytest.approx(expected)


def test_macro_average_by_hand():
    # tp/fp/fn: q1 2/1/1, q2 1/0/3, q3 0/2/0 (gold empty)
    results = []
    for sentence, tags, retrieved, gold in [
        ("q1", ["Neg", "Q"], {"a", "b", "c"}, {"a", "b", "d"}),
        ("q2", ["Neg"], {"a"}, {"a", "b", "c", "d"}),
        ("q3", ["Q"], {"e", "f"}, set()),
    ]:
        r = QueryResult(QueryRecord(sentence, tags, gold), frozenset(retrieved))
        r.precision, r.recall, r.f1 = precision_recall_f1(retrieved, gold)
        results.append(r)
    per_tag, counts = macro_f1(results)
    f1 = [2 * (2 / 3) * (2 / 3) / (4 / 3), 2 * 1 * 0.25 / 1.25, 0.0]
    assert per_tag["Neg"] == pytest.approx((f1[0] + f1[1]) / 2)
    assert per_tag["Q"] == pytest.approx((f1[0] + f1[2]) / 2)
    assert counts == {"Neg": 2, "Q": 2}


def test_query_record_validation():
    with pytest.raises(ValueError):
        QueryRecord("x", [])
    with pytest.raises(ValueError):
        QueryRecord("x", ["Quantity"])


def test_parse_failure_scores_as_empty(small_corpus):
    res = run_query(small_corpus, QueryRecord("A zebra flies", ["Rel"], {"img_A"}))
    assert res.retrieved == frozenset() and res.error and res.f1 == 0.0


def test_budget_trips_count_as_not_retrieved(small_corpus):
    q = QueryRecord("There is a red hat", ["Con"], {"img_A"})
    res = run_query(small_corpus, q, budget=Budget(max_seconds=0.0))
    assert res.retrieved == frozenset()
    assert res.timeouts == ("img_A", "img_B")


def test_fixture_corpus_shape_and_determinism():
    corpus, queries = generate_fixture_corpus(1, 10)
    assert len(corpus) == 10
    assert len(queries) >= 7
    assert all(len(s.domain) <= 6 for s in corpus.images.values())
    tag_sets = {q.phenomena for q in queries}
    assert tag_sets == {tags for _, tags in TEMPLATES}
    again_corpus, again_queries = generate_fixture_corpus(1, 10)
    assert again_corpus.images == corpus.images
    assert [(q.sentence, q.gold) for q in again_queries] == [(q.sentence, q.gold) for q in queries]
    for q in queries:
        assert q.gold == {i for i, s in corpus.images.items() if satisfies(s, parse(q.sentence))}
    with pytest.raises(ValueError):
        generate_fixture_corpus(1, 0)


def test_hybrid_is_perfect_and_simple_is_not():
    corpus, queries = generate_fixture_corpus(3, 25)
    hybrid = evaluate(corpus, queries, TranslationMode.HYBRID)
    simple = evaluate(corpus, queries, TranslationMode.SIMPLE)
    assert all(v == 1.0 for v in hybrid.phenomena.values())
    for h, s in zip(hybrid.queries, simple.queries):
        assert s.retrieved <= h.retrieved
        if {"Neg", "Q"} & set(h.query.phenomena):
            assert s.recall <= h.recall
    assert simple.phenomena["Neg"] < hybrid.phenomena["Neg"]


def test_workers_give_identical_results():
    corpus, queries = generate_fixture_corpus(5, 6)
    one = evaluate(corpus, queries[:4])
    two = evaluate(corpus, queries[:4], workers=2)
    assert [r.retrieved for r in one.queries] == [r.retrieved for r in two.queries]


def test_corpus_and_queries_io(tmp_path):
    corpus, queries = generate_fixture_corpus(2, 4)
    corpus.captions["img0001"] = ["The man is smiling."]
    write_corpus(corpus, tmp_path / "c")
    save_queries(queries, tmp_path / "q.jsonl")
    loaded = load_corpus(tmp_path / "c")
    assert loaded.images == corpus.images
    assert loaded.captions == {"img0001": ["The man is smiling."]}
    back = load_queries(tmp_path / "q.jsonl")
    assert [(q.sentence, q.phenomena, q.gold) for q in back] == \
        [(q.sentence, q.phenomena, q.gold) for q in queries]
    line = json.loads((tmp_path / "q.jsonl").read_text().splitlines()[0])
    assert set(line) == {"sentence", "phenomena", "gold"}


def test_captions_feed_retrieval(desk_scene):
    corpus = Corpus({"img": desk_scene}, {"img": ["The woman is wearing glasses."]})
    q = QueryRecord("A woman is wearing glasses", ["Rel"], {"img"})
    assert retrieve(corpus, q) == set()
    assert retrieve(corpus.with_captions(), q) == {"img"}


def test_metrics_report(small_corpus):
    m = evaluate(small_corpus, [QueryRecord("There is a red hat", ["Con"], {"img_A"})])
    data = m.to_json()
    assert data["mode"] == "hybrid" and data["phenomena"] == {"Con": 1.0}
    assert data["queries"][0]["retrieved"] == ["img_A"]
    assert "Con" in m.table()
