import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarity_cases import CASES
from strategies import closed_formulas, formulas
from visent.fol import (And, ArityError, Atom, Const, Eq, Exists, Forall, FormulaSyntaxError,
                        Implies, Not, Or, Polarity, Var, alpha_equivalent, conj, constants,
                        disj, free_vars, is_closed, parse_formula, polarity, print_formula,
                        push_negation, rename_bound, signature, substitute)


def test_terms_follow_the_naming_convention():
    assert Atom("cat", ("d1",)).args == (Const("d1"),)
    assert Atom("cat", ("sk3",)).args == (Const("sk3"),)
    assert Atom("cat", ("x",)).args == (Var("x"),)
    assert Atom("cat", ("dog",)).args == (Var("dog"),)


def test_atoms_take_one_or_two_arguments():
    with pytest.raises(ArityError):
        Atom("give", ("x", "y", "z"))


@pytest.mark.parametrize("text, expected", [
    ("exists x. (cat(x) & white(x))",
     Exists("x", And(Atom("cat", ("x",)), Atom("white", ("x",))))),
    ("-(x = y)", Not(Eq("x", "y"))),
    ("x != y", Not(Eq("x", "y"))),
    ("forall x. (man(x) -> x = d1)",
     Forall("x", Implies(Atom("man", ("x",)), Eq("x", "d1")))),
])
def test_parse_examples(text, expected):
    assert parse_formula(text) == expected


def test_precedence_and_associativity():
    f = parse_formula("a(x) | b(x) & -c(x) -> d(x) -> e(x)")
    a, b, c, d, e = (Atom(p, ("x",)) for p in "abcde")
    assert f == Implies(Or(a, And(b, Not(c))), Implies(d, e))
    assert parse_formula("a(x) & b(x) & c(x)") == And(a, And(b, c))


def test_quantifier_scope_extends_right():
    f = parse_formula("exists x. cat(x) & red(x)")
    assert isinstance(f, Exists) and isinstance(f.body, And)


@pytest.mark.parametrize("text, offset", [
    ("cat(x", 5),
    ("exists . cat(x)", 7),
    ("cat(x) $ dog(x)", 7),
])
def test_syntax_errors_carry_byte_offsets(text, offset):
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula(text)
    assert err.value.offset == offset


def test_offsets_count_bytes():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("cat(é)")
    assert err.value.offset == 4


def test_arity_conflicts_are_rejected():
    with pytest.raises(ArityError):
        parse_formula("on(x) & on(x,y)")
    with pytest.raises(ArityError):
        signature(parse_formula("on(d1,d2)"), parse_formula("on(d1)"))


@pytest.mark.parametrize("text, expected", [
    ("cat(x)", {"x"}),
    ("exists x. cat(x)", set()),
    ("forall x. wear(x,y)", {"y"}),
    ("exists x. (cat(x) & x = z) | dog(x)", {"z"}),
])
def test_free_vars(text, expected):
    assert free_vars(parse_formula(text)) == expected


def test_substitute_examples():
    assert substitute(parse_formula("cat(x)"), "x", Const("d1")) == parse_formula("cat(d1)")
    bound = parse_formula("exists x. cat(x)")
    assert substitute(bound, "x", Const("d1")) == bound
    renamed = substitute(parse_formula("exists y. wear(x,y)"), "x", Var("y"))
    assert renamed == Exists("y'", Atom("wear", ("y", "y'")))


def test_print_minimal_parentheses():
    cases = [
        "exists x. (cat(x) & white(x))",
        "-(exists x. (cat(x) & white(x)))",
        "(exists x. cat(x)) & (forall y. (cat(y) -> white(y)))",
        "x != y",
        "-cat(x) | dog(x) -> red(x)",
        "(a(x) -> b(x)) -> c(x)",
        "(a(x) | b(x)) & c(x)",
    ]
    for text in cases:
        assert print_formula(parse_formula(text)) == text


def test_conj_disj_right_nest():
    a, b, c = (Atom(p, ("x",)) for p in "abc")
    assert conj([a, b, c]) == And(a, And(b, c))
    assert disj([a, b, c]) == Or(a, Or(b, c))
    with pytest.raises(ValueError):
        conj([])


def test_rename_bound_is_canonical():
    f = parse_formula("exists q. exists r. (cat(q) & on(q,r))")
    assert str(rename_bound(f)) == "exists x. exists y. (cat(x) & on(x,y))"


# ------------------------------------------------------------- polarity

def test_worked_examples():
    assert polarity(parse_formula("exists x. exists y. (cat(x) & dog(y) & touch(x,y))")) \
        is Polarity.POSITIVE
    assert polarity(parse_formula("-(exists x. (cat(x) & white(x)))")) is Polarity.NEGATIVE
    assert polarity(Not(Eq("x", "y"))) is Polarity.POSITIVE


@pytest.mark.parametrize("rule, text, expected", CASES)
def test_polarity_cases(rule, text, expected):
    assert polarity(parse_formula(text)).value == expected


def _reference_positive(f):
    """Direct reading of the rule table for formulas whose negations sit on atoms/equations."""
    match f:
        case Atom() | Eq():
            return True
        case Not(body=Eq()):
            return True
        case Not(body=Atom()):
            return False
        case And(left=l, right=r) | Or(left=l, right=r):
            return _reference_positive(l) and _reference_positive(r)
        case Implies(left=l, right=r):
            return not _reference_positive(l) and _reference_positive(r)
        case Forall(body=b) | Exists(body=b):
            return _reference_positive(b)
    raise AssertionError(f)


def _nnf_shaped(f):
    if isinstance(f, Not):
        return isinstance(f.body, (Atom, Eq))
    return all(_nnf_shaped(g) for g in (getattr(f, "left", None), getattr(f, "right", None),
                                        getattr(f, "body", None)) if g is not None)


@settings(max_examples=300)
@given(formulas(max_leaves=20))
def test_polarity_is_total(f):
    assert polarity(f) in (Polarity.POSITIVE, Polarity.NEGATIVE)


@settings(max_examples=300)
@given(formulas().filter(_nnf_shaped))
def test_polarity_matches_reference(f):
    assert (polarity(f) is Polarity.POSITIVE) == _reference_positive(f)


@settings(max_examples=200)
@given(formulas().filter(lambda f: not isinstance(f, (Atom, Eq))))
def test_negated_compound_uses_one_push(f):
    assert polarity(Not(f)) is polarity(push_negation(f))


# ------------------------------------------------------------- roundtrip

@settings(max_examples=1000)
@given(formulas(max_leaves=14))
def test_print_parse_roundtrip(f):
    g = parse_formula(print_formula(f))
    assert alpha_equivalent(f, g)
    assert g == f


@given(closed_formulas())
def test_closed_generator(f):
    assert is_closed(f)


@given(formulas(), st.sampled_from(["x", "y", "z"]), st.sampled_from(["d1", "d7"]))
def test_substitute_removes_variable(f, var, const):
    g = substitute(f, var, Const(const))
    assert var not in free_vars(g)
    assert free_vars(g) == free_vars(f) - {var}


@given(formulas(), st.sampled_from(["x", "y"]), st.sampled_from(["y", "z"]))
def test_substitute_variable_never_captured(f, var, other):
    g = substitute(f, var, Var(other))
    expected = free_vars(f) - {var}
    if var in free_vars(f):
        expected |= {other}
    assert free_vars(g) == expected


@given(formulas())
def test_rename_bound_preserves_alpha_class(f):
    g = rename_bound(f)
    assert alpha_equivalent(f, g)
    assert free_vars(g) == free_vars(f)
    assert constants(g) == constants(f)
