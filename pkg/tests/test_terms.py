import pytest
from hypothesis import given

from birestriction.terms import (
    Alphabet,
    Barred,
    Gen,
    Max,
    Mul,
    One,
    ParseError,
    Plain,
    Plus,
    SignedLetter,
    Star,
    UnknownGenerator,
    Variety,
    decode_label,
    encode_label,
    expand_barred,
    format_term,
    format_word,
    gens,
    group_value,
    involutive_inverse,
    parse_term,
    parse_word,
    sigma_image,
    substitute,
    term_size,
)

from strategies import labels, terms, words

XY = Alphabet.parse("x,y")


def test_parse_basic_shapes():
    assert parse_term("x", XY) == Gen("x")
    assert parse_term("x y", XY) == Mul(Gen("x"), Gen("y"))
    assert parse_term("xy", XY) == Mul(Gen("x"), Gen("y"))
    assert parse_term("x^*", XY) == Star(Gen("x"))
    assert parse_term("(x y)^+", XY) == Plus(Mul(Gen("x"), Gen("y")))
    assert parse_term("M(x)", XY) == Max(Gen("x"))
    assert parse_term("1", XY) == One()


def test_products_associate_left():
    assert parse_term("x y x", XY) == Mul(Mul(Gen("x"), Gen("y")), Gen("x"))


def test_bracket_atom_is_max_of_word():
    assert parse_term("[xy]", XY) == Max(gens(("x", "y")))


def test_postfix_binds_tighter_than_product():
    assert parse_term("x y^*", XY) == Mul(Gen("x"), Star(Gen("y")))
    assert parse_term("x^*^+", XY) == Plus(Star(Gen("x")))


def test_greedy_multichar_letters():
    ab = Alphabet(("a", "ab", "b"))
    assert parse_term("abb", ab) == Mul(Gen("ab"), Gen("b"))


@pytest.mark.parametrize("text", ["", "(x", "x)", "M(x", "x ^", "[]", "x # y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_term(text, XY)


def test_unknown_generator_reports_position():
    with pytest.raises(UnknownGenerator) as info:
        parse_term("x z", XY)
    assert info.value.position == 2


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("x", "x"))
    with pytest.raises(ValueError):
        Alphabet(("M",))
    with pytest.raises(ValueError):
        Alphabet(("1x",))


def test_variety_parse():
    assert Variety.parse("LS") is Variety.LS
    with pytest.raises(ValueError):
        Variety.parse("nope")


def test_parse_word():
    w = parse_word("[xy] [yy]' x 1 y'", XY)
    assert w == (
        SignedLetter(Barred(("x", "y"))),
        SignedLetter(Barred(("y", "y")), -1),
        SignedLetter(Plain("x")),
        SignedLetter(Plain("y"), -1),
    )
    assert format_word(w) == "[xy] [yy]' x y'"
    assert parse_word("", XY) == ()


def test_word_rejects_term_syntax():
    with pytest.raises(ParseError):
        parse_word("x^*", XY)


def test_group_value_of_barred_word():
    w = parse_word("[xy] [yy]' [yx] [xx]'", XY)
    assert group_value(w) == ()
    assert group_value(parse_word("[xy] y'", XY)) == parse_word("x", XY)


def test_expand_barred_respects_sign():
    w = parse_word("[xy]'", XY)
    assert expand_barred(w) == parse_word("[y]' [x]'", XY)


def test_sigma_image_drops_projections():
    t = parse_term("x (y x)^* M(y x^+) y^+", XY)
    assert sigma_image(t) == ("x", "y")


def test_substitute():
    t = parse_term("x y^*", XY)
    assert substitute(t, {"y": parse_term("x x", XY)}) == parse_term("x (x x)^*", XY)


def test_label_encoding():
    assert encode_label(Plain("x")) == "P:x"
    assert encode_label(Barred(("x", "y"))) == "B:xy"
    assert encode_label(Barred(("ab", "c"))) == "B:ab.c"
    assert decode_label("B:ab.c") == Barred(("ab", "c"))


@given(terms)
def test_print_parse_roundtrip(t):
    assert parse_term(format_term(t), XY) == t


@given(terms)
def test_printing_is_stable(t):
    text = format_term(t)
    assert format_term(parse_term(text, XY)) == text
    assert term_size(t) >= 1


@given(words)
def test_inverse_is_an_involution(w):
    assert involutive_inverse(involutive_inverse(w)) == w
    assert group_value(w + involutive_inverse(w)) == ()


@given(words)
def test_word_roundtrip(w):
    assert parse_word(format_word(w), XY) == w


@given(labels)
def test_label_roundtrip(lab):
    assert decode_label(encode_label(lab)) == lab
