"""Seeded random terms and words for the property suites."""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .oracle import TermOracle, flatten, unflatten
from .terms import Barred, BiTerm, Gen, Label, Max, Mul, One, Plain, Plus, SignedLetter, Star, Word, group_value, term_size


def random_term(rng: random.Random, letters: Sequence[str], size: int, allow_max: bool = True) -> BiTerm:
    """A random term with at most ``size`` nodes."""
    if size <= 1:
        return Gen(rng.choice(letters)) if rng.random() < 0.9 else One()
    ops = ["mul", "mul", "star", "plus"] + (["max"] if allow_max else [])
    op = rng.choice(ops)
    if op == "mul" and size >= 3:
        k = rng.randint(1, size - 2)
        return Mul(random_term(rng, letters, k, allow_max), random_term(rng, letters, size - 1 - k, allow_max))
    inner = random_term(rng, letters, size - 1, allow_max)
    if op == "star":
        return Star(inner)
    if op == "plus":
        return Plus(inner)
    if op == "max":
        return Max(inner)
    return inner


def random_positive(rng: random.Random, letters: Sequence[str], max_len: int, min_len: int = 0) -> tuple[str, ...]:
    return tuple(rng.choice(letters) for _ in range(rng.randint(min_len, max_len)))


def random_word(rng: random.Random, labels: Sequence[Label], max_len: int, min_len: int = 0) -> Word:
    return tuple(SignedLetter(rng.choice(labels), rng.choice((1, -1))) for _ in range(rng.randint(min_len, max_len)))


def extended_labels(letters: Sequence[str], max_bar: int) -> list[Label]:
    """Plain letters plus bars of every positive word up to ``max_bar`` letters."""
    from itertools import product

    out: list[Label] = [Plain(x) for x in letters]
    for n in range(1, max_bar + 1):
        out += [Barred(w) for w in product(letters, repeat=n)]
    return out


def _inverse(w: Word) -> Word:
    return tuple(a.inverse() for a in reversed(w))


def random_idempotent_word(rng: random.Random, labels: Sequence[Label], max_len: int = 3, parts: int = 2) -> Word:
    """A product of conjugates ``c p p^-1 c^-1``, which is idempotent in any inverse monoid."""
    out: Word = ()
    for _ in range(rng.randint(1, parts)):
        p = random_word(rng, labels, max_len, 1)
        c = random_word(rng, labels, 1)
        out += c + p + _inverse(p) + _inverse(c)
    return out


def _spell(rng: random.Random, n: int, base: str, barred_only: bool, max_bar: int) -> Word:
    """A positive word over plain and barred letters whose group value is ``base^n``."""
    out = []
    while n > 0:
        k = rng.randint(1, min(n, max_bar))
        if k == 1 and not barred_only and rng.random() < 0.5:
            out.append(SignedLetter(Plain(base), 1))
        else:
            out.append(SignedLetter(Barred((base,) * k), 1))
        n -= k
    return tuple(out)


def trivial_word(
    rng: random.Random,
    letters: Sequence[str],
    depth: int = 2,
    blocks: int = 2,
    max_power: int = 2,
    max_bar: int = 1,
) -> Word:
    """Nested blocks ``p v q^-1`` (or ``p^-1 v q``) with ``p`` and ``q`` of equal group value.

    With ``max_bar = 1`` and several letters this gives words over plain and
    single-letter barred generators; with one letter and ``max_bar > 1`` the
    two sides may use different bars of the same power.
    """
    out: Word = ()
    for _ in range(rng.randint(1, blocks)):
        x = rng.choice(letters)
        n = rng.randint(1, max_power)
        p = _spell(rng, n, x, False, max_bar)
        q = _spell(rng, n, x, False, max_bar)
        inner = trivial_word(rng, letters, depth - 1, blocks, max_power, max_bar) if depth > 1 and rng.random() < 0.7 else ()
        if rng.random() < 0.5:
            out += p + inner + _inverse(q)
        else:
            out += _inverse(p) + inner + q
    assert not group_value(out)
    return out


def random_rewrite(
    rng: random.Random, t: BiTerm, oracle: TermOracle, steps: int = 3, max_size: Optional[int] = None
) -> BiTerm:
    """Apply ``steps`` random identity rewrites to ``t``; the result equals ``t``."""
    limit = max_size if max_size is not None else term_size(t) + 4
    flat = flatten(t)
    for _ in range(steps):
        options = sorted((s for s in oracle.neighbours(flat) if term_size(unflatten(s)) <= limit), key=repr)
        if not options:
            break
        flat = rng.choice(options)
    return unflatten(flat)


def balanced_word(rng: random.Random, base: str, max_len: int = 5, max_bar: int = 3) -> Word:
    """A random word over ``base`` and its bars, padded so the exponent sum is zero."""
    labels: list[Label] = [Plain(base)] + [Barred((base,) * k) for k in range(1, max_bar + 1)]
    w = random_word(rng, labels, max_len, 1)
    n = sum(a.sign * (1 if isinstance(a.base, Plain) else len(a.base.word)) for a in w)
    pad = _spell(rng, abs(n), base, False, max_bar)
    out = w + (_inverse(pad) if n > 0 else pad)
    assert not group_value(out)
    return out
