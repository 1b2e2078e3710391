"""Reduced words of a free group.

A group word is a tuple of ``(generator, sign)`` pairs with ``sign`` in
``{1, -1}``.  Generators can be any hashable value, which lets the same
helpers serve the free group on ``X`` and on the extended alphabet.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Tuple

GroupWord = Tuple[Tuple[Hashable, int], ...]

IDENTITY: GroupWord = ()


def reduce(pairs: Iterable[tuple[Hashable, int]]) -> GroupWord:
    out: list[tuple[Hashable, int]] = []
    for gen, sign in pairs:
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


def multiply(g: GroupWord, h: GroupWord) -> GroupWord:
    # both inputs reduced: only the seam can cancel
    i = 0
    n = min(len(g), len(h))
    while i < n and g[len(g) - 1 - i][0] == h[i][0] and g[len(g) - 1 - i][1] == -h[i][1]:
        i += 1
    return g[: len(g) - i] + h[i:]


def inverse(g: GroupWord) -> GroupWord:
    return tuple((gen, -sign) for gen, sign in reversed(g))


def positive(word: Iterable[Hashable]) -> GroupWord:
    return tuple((gen, 1) for gen in word)


def prefixes(g: GroupWord) -> frozenset[GroupWord]:
    """All prefixes of a reduced word, i.e. its geodesic from the origin."""
    return frozenset(g[:i] for i in range(len(g) + 1))


def is_positive(g: GroupWord) -> bool:
    return all(sign == 1 for _, sign in g)


def format_group_word(g: GroupWord) -> str:
    if not g:
        return "1"
    return " ".join(f"{gen}" if sign == 1 else f"{gen}'" for gen, sign in g)
