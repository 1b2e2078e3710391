import random

import pytest
from hypothesis import given, settings, strategies as st

from birestriction.automata import accepts, canonical_serialize, fold, iso_check, linear_graph
from birestriction.stephen import (
    BudgetExhausted,
    ClosureBudget,
    TraceEvent,
    close,
    closure_of_word,
    decide_equal_inv,
    format_trace,
    is_idempotent,
    mul_inv,
    plus_inv,
    replay,
    star_inv,
)
from birestriction.terms import Alphabet, Barred, Plain, SignedLetter, Variety, involutive_inverse, parse_word

from strategies import words

XY = Alphabet.parse("x,y")
X = Alphabet.parse("x")
INVERSE_VARIETIES = [Variety.FREE, Variety.LS, Variety.RS, Variety.S]


def w(text, alphabet=XY):
    return parse_word(text, alphabet)


def test_closure_of_plain_letter():
    a, trace = close(linear_graph(w("x")), Variety.FREE)
    assert canonical_serialize(a) == b"2 0 1\n0 B:x 1\n0 P:x 1\n"
    assert [ev.rule for ev in trace] == ["R1"]


def test_closure_adds_chord():
    a, trace = close(linear_graph(w("[x] [y]")), Variety.FREE)
    assert canonical_serialize(a) == b"3 0 2\n0 B:x 1\n0 B:xy 2\n1 B:y 2\n"
    assert str(trace[0]) == "R2 0 1 2 B:xy"


def test_ls_rule_adds_suffix_edge():
    a, _ = close(linear_graph(w("[x]' [xy]")), Variety.LS)
    assert canonical_serialize(a) == b"3 0 1\n0 B:y 1\n2 B:x 0\n2 B:xy 1\n"
    b, _ = close(linear_graph(w("[x]' [xy]")), Variety.FREE)
    assert len(b.edges) == 2


def test_rs_rule_adds_prefix_edge():
    a, trace = close(linear_graph(w("[xy] [y]'")), Variety.RS)
    assert any(ev.rule == "R4" for ev in trace)
    assert len(a.edges) == 3


def test_perfect_rejects_long_bars_but_words_expand():
    with pytest.raises(ValueError):
        close(linear_graph(w("[xy]")), Variety.P)
    a = closure_of_word(w("[xy]"), Variety.P)
    assert accepts(a, w("[x] [y]"))


@pytest.mark.parametrize("variety", INVERSE_VARIETIES)
def test_trivial_value_word_is_stuck(variety):
    a = w("[xy] [yy]' [yx] [xx]'")
    g, trace = close(linear_graph(a), variety)
    assert len(g.vertices) == 5 and not trace
    assert iso_check(g, linear_graph(a))
    assert not is_idempotent(a, variety)


def test_relation_instances_hold():
    assert decide_equal_inv(w("[x] [y]"), w("[xy] [xy]' [x] [y]"), Variety.FREE)
    assert decide_equal_inv(w("[x]' [xx]", X), w("[x]' [x] [x]", X), Variety.LS)
    assert not decide_equal_inv(w("[x]' [xx]", X), w("[x]' [x] [x]", X), Variety.FREE)
    assert decide_equal_inv(w("[x] [y]"), w("[x] [x]' [xy]"), Variety.LS)
    assert decide_equal_inv(w("[x] [y]"), w("[xy] [y]' [y]"), Variety.RS)
    assert decide_equal_inv(w("[xy]"), w("[x] [y]"), Variety.P)
    assert decide_equal_inv(w("x"), w("[x] x' x"), Variety.P)


def test_budget():
    with pytest.raises(ValueError):
        ClosureBudget(0)
    with pytest.raises(BudgetExhausted):
        close(linear_graph(w("[x] [y] [x] [y]")), Variety.FREE, 1)


def test_element_ops():
    g = closure_of_word(w("x"), Variety.FREE)
    assert plus_inv(g).start == plus_inv(g).end == g.start
    assert star_inv(g).start == star_inv(g).end == g.end
    a = closure_of_word(w("[x]"), Variety.FREE)
    b = closure_of_word(w("[y]"), Variety.FREE)
    assert iso_check(mul_inv(a, b, Variety.FREE), closure_of_word(w("[x] [y]"), Variety.FREE))


def test_trace_format():
    ev = TraceEvent("R1", 0, 1, None, (0, Barred(("x",)), 1))
    assert format_trace([ev]) == "R1 0 1 - B:x\n"


@settings(max_examples=40, deadline=None)
@given(words, st.sampled_from(list(Variety)))
def test_trace_replays(word, variety):
    a = linear_graph(word if variety is not Variety.P else closure_input(word))
    out, trace = close(a, variety)
    assert iso_check(replay(a, trace), out)


def closure_input(word):
    from birestriction.terms import expand_barred

    return expand_barred(word)


@settings(max_examples=40, deadline=None)
@given(words, st.sampled_from(INVERSE_VARIETIES), st.integers(0, 2**32))
def test_closure_properties(word, variety, seed):
    a = linear_graph(word)
    out, _ = close(a, variety)
    ref = canonical_serialize(out)
    shuffled, _ = close(a, variety, rng=random.Random(seed))
    assert canonical_serialize(shuffled) == ref
    again, trace = close(out, variety)
    assert canonical_serialize(again) == ref and not trace
    assert len(out.vertices) <= len(fold(a).vertices)
    assert accepts(out, word)


@settings(max_examples=40, deadline=None)
@given(words, words, st.sampled_from(INVERSE_VARIETIES))
def test_conjugates_of_idempotents(p, q, variety):
    e = q + involutive_inverse(q)
    assert is_idempotent(e, variety)
    assert is_idempotent(p + e + involutive_inverse(p), variety)


@settings(max_examples=30, deadline=None)
@given(words, st.sampled_from(INVERSE_VARIETIES))
def test_equality_is_reflexive_and_symmetric(word, variety):
    assert decide_equal_inv(word, word, variety)
    other = word + involutive_inverse(word) + word
    assert decide_equal_inv(word, other, variety) and decide_equal_inv(other, word, variety)
