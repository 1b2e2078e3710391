"""Alphabets, signed words over ``X`` and barred words, and terms.

Terms are unreduced ASTs in the signature ``(*, ^*, ^+, M, 1)``.  The
text grammar is::

    term   := factor { factor }
    factor := atom { "^*" | "^+" }
    atom   := "1" | GEN | "[" GEN { GEN } "]" | "M(" term ")" | "(" term ")"

Juxtaposition is multiplication and associates to the left.  A bracketed
word ``[u]`` in a term stands for the maximum element ``M(u)``.  Signed
words use the atoms ``GEN`` and ``[GEN+]``, each optionally followed by
``'`` for the formal inverse.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Tuple, Union

from . import freegroup

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UnknownGenerator(ParseError):
    pass


class Variety(enum.Enum):
    """The five free objects: plain, left strong, right strong, strong, perfect."""

    FREE = "free"
    LS = "ls"
    RS = "rs"
    S = "s"
    P = "p"

    @classmethod
    def parse(cls, text: str) -> "Variety":
        try:
            return cls(text.strip().lower())
        except ValueError:
            names = ", ".join(v.value for v in cls)
            raise ValueError(f"unknown variety {text!r}; expected one of {names}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Alphabet:
    letters: Tuple[str, ...]

    def __post_init__(self):
        if not self.letters:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in alphabet {self.letters}")
        for x in self.letters:
            if not _IDENT.match(x):
                raise ValueError(f"alphabet letter {x!r} is not an identifier")
            if x == "M":
                raise ValueError("'M' is reserved for the maximum operation")

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        return cls(tuple(part.strip() for part in text.split(",") if part.strip()))

    def __contains__(self, letter: object) -> bool:
        return letter in self.letters

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ",".join(self.letters)


# -- letters and signed words -------------------------------------------------


@dataclass(frozen=True)
class Plain:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Barred:
    """The generator standing for the maximum element over a nonempty word."""

    word: Tuple[str, ...]

    def __post_init__(self):
        if not self.word:
            raise ValueError("a barred label needs a nonempty word")

    def __str__(self) -> str:
        return "[" + _join(self.word) + "]"


Label = Union[Plain, Barred]


def _join(word: Sequence[str]) -> str:
    if all(len(x) == 1 for x in word):
        return "".join(word)
    return " ".join(word)


def label_key(label: Label) -> tuple:
    if isinstance(label, Plain):
        return (0, (label.name,))
    return (1, label.word)


def encode_label(label: Label) -> str:
    if isinstance(label, Plain):
        return f"P:{label.name}"
    return "B:" + ("".join(label.word) if all(len(x) == 1 for x in label.word) else ".".join(label.word))


def decode_label(text: str) -> Label:
    kind, _, body = text.partition(":")
    if kind == "P":
        return Plain(body)
    if kind == "B":
        return Barred(tuple(body.split(".")) if "." in body else tuple(body))
    raise ValueError(f"bad label encoding {text!r}")


@dataclass(frozen=True)
class SignedLetter:
    base: Label
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.base, -self.sign)

    def __str__(self) -> str:
        return str(self.base) + ("'" if self.sign < 0 else "")


Word = Tuple[SignedLetter, ...]


def plain_word(letters: Sequence[str]) -> Word:
    return tuple(SignedLetter(Plain(x)) for x in letters)


def involutive_inverse(w: Word) -> Word:
    return tuple(a.inverse() for a in reversed(w))


def to_group_word(w: Word) -> freegroup.GroupWord:
    """Value in FG(X) under x -> x and [u] -> u."""
    pairs = []
    for a in w:
        letters = (a.base.name,) if isinstance(a.base, Plain) else a.base.word
        if a.sign > 0:
            pairs.extend((x, 1) for x in letters)
        else:
            pairs.extend((x, -1) for x in reversed(letters))
    return freegroup.reduce(pairs)


def from_group_word(g: freegroup.GroupWord) -> Word:
    return tuple(SignedLetter(Plain(x), s) for x, s in g)


def group_value(w: Word) -> Word:
    return from_group_word(to_group_word(w))


def expand_barred(w: Word) -> Word:
    """Spell every barred letter ``[x1..xn]`` as ``[x1]...[xn]``."""
    out: list[SignedLetter] = []
    for a in w:
        if isinstance(a.base, Barred) and len(a.base.word) > 1:
            parts = [SignedLetter(Barred((x,))) for x in a.base.word]
            if a.sign < 0:
                parts = [p.inverse() for p in reversed(parts)]
            out.extend(parts)
        else:
            out.append(a)
    return tuple(out)


def format_word(w: Word) -> str:
    return " ".join(str(a) for a in w) if w else "1"


# -- terms --------------------------------------------------------------------


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Mul:
    left: "BiTerm"
    right: "BiTerm"


@dataclass(frozen=True)
class Star:
    arg: "BiTerm"


@dataclass(frozen=True)
class Plus:
    arg: "BiTerm"


@dataclass(frozen=True)
class Max:
    arg: "BiTerm"


BiTerm = Union[One, Gen, Mul, Star, Plus, Max]

ONE = One()


def product(factors: Sequence[BiTerm]) -> BiTerm:
    """Left-associated product; the empty product is ``1``."""
    if not factors:
        return ONE
    t = factors[0]
    for f in factors[1:]:
        t = Mul(t, f)
    return t


def gens(letters: Sequence[str]) -> BiTerm:
    return product([Gen(x) for x in letters])


def sigma_image(t: BiTerm) -> Tuple[str, ...]:
    """Image in the free monoid: projections go to the empty word."""
    if isinstance(t, Gen):
        return (t.name,)
    if isinstance(t, Mul):
        return sigma_image(t.left) + sigma_image(t.right)
    if isinstance(t, Max):
        return sigma_image(t.arg)
    return ()


def term_size(t: BiTerm) -> int:
    if isinstance(t, (One, Gen)):
        return 1
    if isinstance(t, Mul):
        return 1 + term_size(t.left) + term_size(t.right)
    return 1 + term_size(t.arg)


def has_max(t: BiTerm) -> bool:
    if isinstance(t, Max):
        return True
    if isinstance(t, Mul):
        return has_max(t.left) or has_max(t.right)
    if isinstance(t, (Star, Plus)):
        return has_max(t.arg)
    return False


def term_letters(t: BiTerm) -> set[str]:
    if isinstance(t, Gen):
        return {t.name}
    if isinstance(t, Mul):
        return term_letters(t.left) | term_letters(t.right)
    if isinstance(t, (Star, Plus, Max)):
        return term_letters(t.arg)
    return set()


def substitute(t: BiTerm, mapping: Mapping[str, BiTerm]) -> BiTerm:
    """Replace generators by terms; unmapped generators stay."""
    if isinstance(t, Gen):
        return mapping.get(t.name, t)
    if isinstance(t, Mul):
        return Mul(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, (Star, Plus, Max)):
        return type(t)(substitute(t.arg, mapping))
    return t


def format_term(t: BiTerm) -> str:
    if isinstance(t, One):
        return "1"
    if isinstance(t, Gen):
        return t.name
    if isinstance(t, Mul):
        right = format_term(t.right)
        if isinstance(t.right, Mul):
            right = f"({right})"
        return f"{format_term(t.left)} {right}"
    if isinstance(t, Max):
        return f"M({format_term(t.arg)})"
    inner = format_term(t.arg)
    if isinstance(t.arg, Mul):
        inner = f"({inner})"
    return inner + ("^*" if isinstance(t, Star) else "^+")


# -- lexer and parsers ----------------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # GEN ONE LPAR RPAR LBR RBR MAX STAR PLUS INV
    pos: int
    value: str = ""


_PUNCT = {"(": "LPAR", ")": "RPAR", "[": "LBR", "]": "RBR", "'": "INV"}


def _split_run(run: str, start: int, alphabet: Alphabet) -> Iterator[_Tok]:
    """Split an identifier run greedily into alphabet letters."""
    letters = sorted(alphabet.letters, key=len, reverse=True)
    j = 0
    while j < len(run):
        for x in letters:
            if run.startswith(x, j):
                yield _Tok("GEN", start + j, x)
                j += len(x)
                break
        else:
            m = re.match(r"[A-Za-z0-9_]+", run[j:])
            raise UnknownGenerator(f"unknown generator {m.group(0)!r}", start + j)


def _tokenize(text: str, alphabet: Alphabet) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif text.startswith("^*", i):
            toks.append(_Tok("STAR", i))
            i += 2
        elif text.startswith("^+", i):
            toks.append(_Tok("PLUS", i))
            i += 2
        elif text.startswith("M(", i):
            toks.append(_Tok("MAX", i))
            i += 2
        elif c in _PUNCT:
            toks.append(_Tok(_PUNCT[c], i))
            i += 1
        elif c == "1":
            toks.append(_Tok("ONE", i))
            i += 1
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_") and not text.startswith("M(", j):
                j += 1
            toks.extend(_split_run(text[i:j], i, alphabet))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.toks = _tokenize(text, alphabet)
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind} but input ended", len(self.text))
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.kind}", tok.pos)
        self.i += 1
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.toks)

    def term(self) -> BiTerm:
        t = self.factor()
        while (tok := self.peek()) is not None and tok.kind in ("ONE", "GEN", "LBR", "MAX", "LPAR"):
            t = Mul(t, self.factor())
        return t

    def factor(self) -> BiTerm:
        t = self.atom()
        while (tok := self.peek()) is not None and tok.kind in ("STAR", "PLUS"):
            self.i += 1
            t = Star(t) if tok.kind == "STAR" else Plus(t)
        return t

    def atom(self) -> BiTerm:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.i += 1
        if tok.kind == "ONE":
            return ONE
        if tok.kind == "GEN":
            return Gen(tok.value)
        if tok.kind == "LBR":
            return Max(gens(self.bracket_word()))
        if tok.kind == "MAX":
            t = self.term()
            self.take("RPAR")
            return Max(t)
        if tok.kind == "LPAR":
            t = self.term()
            self.take("RPAR")
            return t
        raise ParseError(f"unexpected {tok.kind}", tok.pos)

    def bracket_word(self) -> Tuple[str, ...]:
        letters = []
        while (tok := self.peek()) is not None and tok.kind == "GEN":
            letters.append(tok.value)
            self.i += 1
        if not letters:
            tok = self.peek()
            raise ParseError("empty bracket word", tok.pos if tok else len(self.text))
        self.take("RBR")
        return tuple(letters)

    def word(self) -> Word:
        out: list[SignedLetter] = []
        while (tok := self.peek()) is not None:
            self.i += 1
            if tok.kind == "ONE":
                continue
            if tok.kind == "GEN":
                base: Label = Plain(tok.value)
            elif tok.kind == "LBR":
                base = Barred(self.bracket_word())
            else:
                raise ParseError(f"unexpected {tok.kind} in signed word", tok.pos)
            sign = 1
            if (nxt := self.peek()) is not None and nxt.kind == "INV":
                self.i += 1
                sign = -1
            out.append(SignedLetter(base, sign))
        return tuple(out)


def parse_term(text: str, alphabet: Alphabet) -> BiTerm:
    p = _Parser(text, alphabet)
    if p.at_end():
        raise ParseError("empty term", 0)
    t = p.term()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing {tok.kind}", tok.pos)
    return t


def parse_word(text: str, alphabet: Alphabet) -> Word:
    return _Parser(text, alphabet).word()
