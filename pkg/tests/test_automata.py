import random

from hypothesis import given, settings, strategies as st

from birestriction.automata import (
    InverseAutomaton,
    accepts,
    canonical_serialize,
    deserialize,
    fold,
    glue,
    iso_check,
    linear_graph,
    relabel,
    rooted_morphism,
    to_dot,
    trivial,
)
from birestriction.stephen import closure_of_word
from birestriction.terms import Alphabet, Plain, Variety, parse_word

from strategies import words

XY = Alphabet.parse("x,y")


def w(text):
    return parse_word(text, XY)


def test_trivial_record():
    assert canonical_serialize(trivial()) == b"1 0 0\n"


def test_linear_graph_shape():
    a = linear_graph(w("x y'"))
    assert len(a.vertices) == 3
    assert (0, Plain("x"), 1) in a.edges
    assert (2, Plain("y"), 1) in a.edges
    assert accepts(a, w("x y'"))


def test_fold_collapses_backtrack():
    a = fold(linear_graph(w("x x' x")))
    assert len(a.vertices) == 2
    assert a.is_deterministic()
    assert accepts(a, w("x"))
    assert accepts(a, w("x x' x x' x"))


def test_fold_of_relabeled_copy_is_isomorphic():
    a = linear_graph(w("x x' x y y'"))
    moved = InverseAutomaton(
        frozenset(v + 10 for v in a.vertices),
        frozenset((s + 10, lab, t + 10) for s, lab, t in a.edges),
        a.start + 10,
        a.end + 10,
    )
    assert iso_check(fold(a), fold(moved))
    assert canonical_serialize(fold(a)) == canonical_serialize(fold(moved))


def test_iso_label_mismatch():
    assert not iso_check(fold(linear_graph(w("x"))), fold(linear_graph(w("y"))))


def test_serialize_roundtrip():
    a = closure_of_word(w("[xy] [y]'"), Variety.FREE)
    assert iso_check(deserialize(canonical_serialize(a)), a)


def test_dot_styles():
    dot = to_dot(closure_of_word(w("x"), Variety.FREE))
    assert 'label="x", style=solid' in dot
    assert 'label="[x]", style=dashed' in dot


def test_glue_identifies_end_with_start():
    a = glue(linear_graph(w("x")), linear_graph(w("x'")))
    assert len(a.vertices) == 2
    assert a.start == a.end


def test_rooted_morphism_direction():
    big = fold(linear_graph(w("x y y' x'")))
    small = fold(linear_graph(w("x x'")))
    assert rooted_morphism(big, small) is not None
    assert rooted_morphism(small, big) is None


@given(words)
def test_folded_linear_graph_accepts_its_word(word):
    a = fold(linear_graph(word))
    assert a.is_deterministic() and a.is_connected()
    assert accepts(a, word)


@given(words, st.integers(0, 2**32))
def test_fold_is_confluent_and_idempotent(word, seed):
    a = linear_graph(word)
    ref = canonical_serialize(fold(a))
    assert canonical_serialize(fold(a, random.Random(seed))) == ref
    assert canonical_serialize(fold(fold(a))) == ref


@settings(max_examples=50)
@given(words, words, words)
def test_glue_is_associative(p, q, r):
    a, b, c = (fold(linear_graph(x)) for x in (p, q, r))
    assert iso_check(glue(glue(a, b), c), glue(a, glue(b, c)))


@given(words, words)
def test_mutual_morphisms_iff_isomorphic(p, q):
    a = relabel(fold(linear_graph(p + tuple(x.inverse() for x in reversed(p)))))
    b = relabel(fold(linear_graph(q + tuple(x.inverse() for x in reversed(q)))))
    both = rooted_morphism(a, b) is not None and rooted_morphism(b, a) is not None
    assert both == iso_check(a, b)
