import random

from birestriction.ffbr import VarietyContext, decide_equal
from birestriction.generators import balanced_word, random_rewrite, random_term, trivial_word
from birestriction.oracle import OracleVerdict, WordOracle, flatten, term_oracle, unflatten
from birestriction.stephen import decide_equal_inv
from birestriction.terms import Alphabet, Variety, group_value, parse_term, parse_word

XY = Alphabet.parse("x,y")
X = Alphabet.parse("x")


def t(text):
    return parse_term(text, XY)


def test_flatten_drops_units():
    assert flatten(t("1 x (1^*) M(1)")) == (("g", "x"),)
    assert unflatten(flatten(t("x (y x)^*"))) == t("x (y x)^*")


def test_term_oracle_verdicts():
    free = term_oracle(Variety.FREE)
    assert free.equal(t("x^+ x"), t("x")) is OracleVerdict.EQUAL
    assert free.equal(t("(x^*)^*"), t("x^*")) is OracleVerdict.EQUAL
    assert free.equal(t("M(x) M(y)"), t("M(x y)")) is OracleVerdict.UNKNOWN
    assert term_oracle(Variety.P).equal(t("M(x) M(y)"), t("M(x y)")) is OracleVerdict.EQUAL


def test_oracle_never_says_unequal():
    rng = random.Random(5)
    oracle = term_oracle(Variety.S)
    for _ in range(20):
        a, b = random_term(rng, "xy", 4), random_term(rng, "xy", 4)
        assert oracle.equal(a, b, 4) is not OracleVerdict.UNEQUAL


def test_rewrites_are_equalities():
    rng = random.Random(11)
    for variety in Variety:
        ctx = VarietyContext(XY, variety)
        oracle = term_oracle(variety)
        for _ in range(15):
            a = random_term(rng, "xy", 5)
            assert decide_equal(a, random_rewrite(rng, a, oracle), ctx)


def test_word_oracle_relations():
    oracle = WordOracle(Variety.LS, ["x"])
    lhs, rhs = parse_word("[x]' [xx]", X), parse_word("[x]' [x] [x]", X)
    assert oracle.equal(lhs, rhs) is OracleVerdict.EQUAL
    assert decide_equal_inv(lhs, rhs, Variety.LS)
    assert WordOracle(Variety.FREE, ["x"]).equal(lhs, rhs) is OracleVerdict.UNKNOWN


def test_word_generators_have_trivial_value():
    rng = random.Random(3)
    for _ in range(30):
        assert not group_value(trivial_word(rng, "xy"))
        assert not group_value(balanced_word(rng, "x"))
