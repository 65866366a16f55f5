import random

import pytest
from hypothesis import given, settings

from oracle import countermodel, random_instance
from strategies import structures
from visent.fol import parse_formula
from visent.prover import (Budget, ProverError, Status, clausify, entails, prove)
from visent.semparser import parse
from visent.structure import Structure, satisfies
from visent.translator import (TranslationMode, translate_complex, translate_simple,
                               unique_name_axioms)

F = parse_formula


def test_clausify_existential_goal(man_hat):
    cs = clausify([translate_simple(man_hat), *unique_name_axioms(man_hat)], F("exists x. cat(x)"))
    clauses = cs.pretty()
    assert ["man(d1)"] in clauses
    assert ["-cat(d1)"] in clauses and ["-cat(d2)"] in clauses
    assert cs.universe == ("d1", "d2")


def test_clausify_universal_goal_skolemizes(man_hat):
    cs = clausify([translate_simple(man_hat)], F("forall y. (cat(y) -> white(y))"))
    assert cs.skolem_constants == ("sk1",)
    assert ["cat(sk1)"] in cs.pretty() and ["-white(sk1)"] in cs.pretty()
    assert "sk1" in cs.universe


def test_clausify_equality_axioms():
    cs = clausify([F("cat(d1) & dog(d2)")], F("exists x. exists y. (cat(x) & cat(y) & x != y)"))
    clauses = cs.pretty()
    assert ["d1=d1"] in clauses
    # congruence of cat over d1 = d2 in both directions
    assert sorted(["-cat(d1)", "-d1=d2", "cat(d2)"]) in [sorted(c) for c in clauses]
    assert sorted(["-cat(d2)", "-d1=d2", "cat(d1)"]) in [sorted(c) for c in clauses]


def test_clausify_rejects_free_variables():
    with pytest.raises(ProverError):
        clausify([F("cat(x)")], F("cat(d1)"))
    with pytest.raises(ProverError):
        clausify([F("forall x. exists y. on(x,y)")], F("cat(d1)"), allow_skolem_functions=False)


def test_goal_without_constants_gets_a_witness():
    assert prove([F("forall x. cat(x)")], F("exists x. cat(x)")).entailed


@pytest.mark.parametrize("premises, goal, status", [
    ("complex+una", "-(exists x. (man(x) & hat(x)))", Status.ENTAILED),
    ("simple", "-(exists x. cat(x))", Status.NOT_ENTAILED),
    ("simple", "exists x. exists y. (man(x) & wear(x,y))", Status.ENTAILED),
    ("complex+una", "forall x. (hat(x) -> red(x))", Status.ENTAILED),
    ("simple", "forall x. (hat(x) -> red(x))", Status.NOT_ENTAILED),
])
def test_prove_examples(man_hat, premises, goal, status):
    if premises == "simple":
        ps = [translate_simple(man_hat)]
    else:
        ps = [translate_complex(man_hat, extra={"cat": 1}), *unique_name_axioms(man_hat)]
    assert prove(ps, F(goal)).status is status


def test_entails_examples(man_hat, two_cats, one_cat):
    no_white_cat = parse("No cat is white")
    assert entails(man_hat, no_white_cat, TranslationMode.HYBRID).status is Status.ENTAILED
    assert entails(man_hat, no_white_cat, TranslationMode.SIMPLE).status is Status.NOT_ENTAILED
    two = parse("There are at least two cats")
    assert entails(two_cats, two).entailed
    assert not entails(one_cat, two).entailed
    assert entails(two_cats, two).mode is TranslationMode.SIMPLE
    assert entails(man_hat, no_white_cat).mode is TranslationMode.COMPLEX


def test_entails_rejects_open_queries(man_hat):
    with pytest.raises(ProverError):
        entails(man_hat, F("cat(x)"))


def test_skolem_functions_mark_inexact_verdicts():
    s = Structure(("d1", "d2"), {"man": {"d1"}, "street": {"d2"}}, {"walk_on": {("d1", "d2")}})
    q = parse("A man is not walking on a street")
    v = entails(s, q)
    assert v.status is Status.NOT_ENTAILED and satisfies(s, q) is False
    alone = Structure(("d1",), {"man": {"d1"}})
    assert entails(alone, q).entailed and satisfies(alone, q)


def test_budget_exceeded():
    # p and q occur with both signs, so only a decision can settle them
    ps = [F("p(d1) | q(d1)"), F("-p(d1) | -q(d1)")]
    goal = F("r(d1)")
    assert prove(ps, goal, Budget(max_seconds=0.0)).status is Status.BUDGET_EXCEEDED
    v = prove(ps, goal, Budget(max_decisions=0))
    assert v.status is Status.BUDGET_EXCEEDED
    assert prove(ps, goal).status is Status.NOT_ENTAILED


def test_model_reported_for_non_entailment(man_hat):
    v = prove([translate_simple(man_hat)], F("-(exists x. cat(x))"))
    assert any(a.startswith("cat(") for a in v.model)


def test_determinism(man_hat):
    q = parse("All hats are red or white")
    a = entails(man_hat, q, TranslationMode.COMPLEX)
    b = entails(man_hat, q, TranslationMode.COMPLEX)
    assert (a.status, a.clauses, a.atoms, a.decisions, a.model) == \
        (b.status, b.clauses, b.atoms, b.decisions, b.model)


def test_agrees_with_model_enumeration():
    rng = random.Random(20240)
    for _ in range(150):
        premises, goal, bound = random_instance(rng)
        verdict = prove(premises, goal)
        assert verdict.exact
        assert verdict.entailed == (countermodel(premises, goal, bound) is None), (
            [str(p) for p in premises], str(goal))


QUERIES = [parse(s) for s in [
    "There is a red cat.", "No cat is red.", "All cats are red.",
    "There are at least two dogs.", "A cat is on a dog.", "Every cat is not on a dog.",
    "All dogs are red or white.", "There is a dog which is not red.",
]]


@settings(max_examples=60, deadline=None)
@given(structures(max_size=4, unary=["cat", "dog", "red", "white"], binary=["on"]))
def test_complex_and_hybrid_match_oracle(s):
    for q in QUERIES:
        truth = satisfies(s, q)
        assert entails(s, q, TranslationMode.HYBRID).entailed == truth, str(q)
        assert entails(s, q, TranslationMode.COMPLEX).entailed == truth, str(q)


@settings(max_examples=60, deadline=None)
@given(structures(max_size=4, unary=["cat", "dog", "red", "white"], binary=["on"]))
def test_simple_mode_is_sound(s):
    for q in QUERIES:
        if entails(s, q, TranslationMode.SIMPLE).entailed:
            assert satisfies(s, q)
