import pytest
from hypothesis import given, settings

from birestriction.ffbr import VarietyContext, element_leq, evaluate
from birestriction.perfect import (
    BARRED,
    PLAIN,
    Discrepancy,
    TwinGraph,
    crosscheck,
    decide_equal_p,
    eval_p,
    leq_p,
    same_shape,
)
from birestriction.terms import Alphabet, Max, Mul, Star, Variety, gens, parse_term

from strategies import positive_words, terms

XY = Alphabet.parse("x,y")
P = VarietyContext(XY, Variety.P)
X1 = (("x", 1),)


def t(text):
    return parse_term(text, XY)


def test_generator_has_both_labels():
    el = eval_p(t("x"))
    assert el.u == ("x",)
    assert el.gamma.edges == {((), "x", PLAIN), ((), "x", BARRED)}


def test_max_has_barred_only():
    el = eval_p(t("M(x)"))
    assert el.gamma.edges == {((), "x", BARRED)}


def test_plus_keeps_graph():
    assert eval_p(t("x^+")).gamma == eval_p(t("x")).gamma
    assert eval_p(t("x^+")).u == ()


def test_decisions():
    assert decide_equal_p(t("M(x) M(y)"), t("M(x y)"))
    assert not decide_equal_p(t("x"), t("M(x)"))
    assert decide_equal_p(t("M(x) x^*"), t("x"))


def test_twin_invariant_enforced():
    with pytest.raises(ValueError):
        TwinGraph(frozenset({(), X1}), frozenset({((), "x", PLAIN)}))
    with pytest.raises(ValueError):
        TwinGraph(frozenset({(), X1}), frozenset())


def test_crosscheck_requires_p():
    with pytest.raises(ValueError):
        crosscheck(t("x"), t("x"), VarietyContext(XY, Variety.FREE))
    assert crosscheck(t("M(x) M(y)"), t("M(x y)"), P)


def test_discrepancy_is_an_assertion():
    assert issubclass(Discrepancy, AssertionError)


def test_exports():
    g = eval_p(t("x M(y)^*")).gamma
    assert ("1", "x", "x") in g.serialize()
    dot = g.to_dot()
    assert "style=solid" in dot and "style=dashed" in dot


@settings(max_examples=60, deadline=None)
@given(terms, terms)
def test_models_agree(s, r):
    crosscheck(s, r, P)
    assert same_shape(s, P)


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_order_matches(s, r):
    below = Mul(s, Star(r))
    assert leq_p(eval_p(below), eval_p(s))
    assert element_leq(evaluate(below, P), evaluate(s, P))


@given(positive_words, positive_words)
def test_max_is_multiplicative(u, v):
    assert eval_p(Max(gens(u))) * eval_p(Max(gens(v))) == eval_p(Max(gens(u + v)))
