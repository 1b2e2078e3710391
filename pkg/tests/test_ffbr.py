import json

import pytest
from hypothesis import given, settings, strategies as st

from birestriction.automata import canonical_serialize
from birestriction.ffbr import (
    SCHEMES,
    VarietyContext,
    check_identity,
    decide_equal,
    element_leq,
    evaluate,
    leq,
    max_element,
    oracle_equal,
    scheme_holds_in,
    sigma_related,
)
from birestriction.munn import fbr_equal
from birestriction.oracle import OracleVerdict
from birestriction.terms import Alphabet, Gen, Star, Variety, has_max, parse_term

from strategies import terms

XY = Alphabet.parse("x,y")


def ctx(variety="free"):
    return VarietyContext(XY, Variety.parse(variety))


def t(text):
    return parse_term(text, XY)


def test_generator_coordinates():
    el = evaluate(t("x"), ctx())
    assert el.u == ("x",)
    assert canonical_serialize(el.graph) == b"2 0 0\n0 B:x 1\n0 P:x 1\n"


def test_max_coordinates():
    el = evaluate(t("M(x y)"), ctx())
    assert el.u == ("x", "y")
    assert canonical_serialize(el.graph) == b"2 0 0\n0 B:xy 1\n"


def test_max_of_projection_is_identity():
    assert decide_equal(t("M(x^*)"), t("1"), ctx())


@pytest.mark.parametrize("variety,expected", [("p", True), ("free", False), ("ls", False), ("s", False)])
def test_perfect_identity(variety, expected):
    assert decide_equal(t("M(x) M(y)"), t("M(x y)"), ctx(variety)) is expected


@pytest.mark.parametrize("variety", ["free", "ls", "rs", "s", "p"])
def test_a1n_and_reflexivity(variety):
    c = ctx(variety)
    assert decide_equal(t("M(x) x^*"), t("x"), c)
    assert decide_equal(t("x y^+ M(y)"), t("x y^+ M(y)"), c)


def test_left_strong_relation():
    assert decide_equal(t("M(x) M(y)"), t("M(x)^+ M(x y)"), ctx("ls"))
    assert not decide_equal(t("M(x) M(y)"), t("M(x)^+ M(x y)"), ctx("free"))


def test_order_and_sigma():
    c = ctx()
    assert leq(t("x"), t("M(x)"), c)
    assert not leq(t("M(x)"), t("x"), c)
    assert leq(t("M(x)"), t("M(x)"), c)
    assert sigma_related(t("x^*"), t("y^+"), c)
    assert not sigma_related(t("x"), t("y"), c)
    assert max_element(t("x y^*"), c) == evaluate(t("M(x)"), c)


def test_check_identity_schemes():
    sub = {"x": Gen("x"), "y": Gen("y")}
    assert check_identity("a1n", sub, ctx())
    assert check_identity("left_s", {"x": t("x y"), "y": t("y^*")}, ctx("ls"))
    assert not check_identity("left_s", sub, ctx("free"))
    with pytest.raises(KeyError):
        check_identity("nope", sub, ctx())


def test_scheme_table():
    assert scheme_holds_in("a1n", Variety.FREE)
    assert scheme_holds_in("left_s", Variety.S) and not scheme_holds_in("left_s", Variety.RS)
    assert scheme_holds_in("perf", Variety.P) and not scheme_holds_in("perf", Variety.S)
    assert set(SCHEMES) >= {"birestriction-axioms", "a1n", "M2", "left_s", "right_s", "perf"}


def test_letters_outside_alphabet():
    with pytest.raises(ValueError):
        evaluate(parse_term("z", Alphabet.parse("z")), ctx())


def test_json_record():
    rec = json.loads(evaluate(t("x"), ctx()).to_json({"a1n": True}))
    assert rec["variety"] == "free" and rec["u"] == "x" and rec["verdicts"] == {"a1n": True}
    assert bytes.fromhex(rec["graph"]).startswith(b"2 0 0\n")


def test_oracle_examples():
    c = ctx()
    assert oracle_equal(t("x y"), t("x y"), c, 1) is OracleVerdict.EQUAL
    assert oracle_equal(t("x^+ x"), t("x"), c) is OracleVerdict.EQUAL
    assert oracle_equal(t("M(x) M(y)"), t("M(x y)"), c, 6) is OracleVerdict.UNKNOWN


@settings(max_examples=40, deadline=None)
@given(terms, st.sampled_from(list(Variety)))
def test_element_below_its_max(s, variety):
    c = ctx(variety.value)
    assert element_leq(evaluate(s, c), max_element(s, c))


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_free_quotient_is_sound(s, r):
    if not has_max(s) and not has_max(r) and fbr_equal(s, r):
        assert decide_equal(s, r, ctx())


@settings(max_examples=40, deadline=None)
@given(terms, terms, st.sampled_from(list(Variety)))
def test_properness(s, r, variety):
    c = ctx(variety.value)
    if sigma_related(s, r, c) and decide_equal(Star(s), Star(r), c):
        assert decide_equal(s, r, c)


@settings(max_examples=30, deadline=None)
@given(terms, terms, st.sampled_from(list(Variety)))
def test_axioms_hold_for_hypothesis_terms(s, r, variety):
    assert check_identity("birestriction-axioms", {"x": s, "y": r}, ctx(variety.value))
