"""Bounded derivation search, used to certify equalities independently.

Both oracles only ever answer EQUAL (a derivation was found) or UNKNOWN.
Neither one consults the closure engine.

``TermOracle`` rewrites flattened terms with the variety identities, applied
in both directions, and meets in the middle.  ``WordOracle`` rewrites signed
words with instances of the defining relations plus a few free-inverse
moves, and compares words by their Munn trees over the extended alphabet.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .munn import munn_of_pairs
from .terms import Barred, BiTerm, Gen, Label, Max, Mul, One, Plain, Plus, SignedLetter, Star, Variety, Word


class OracleVerdict(enum.Enum):
    EQUAL = "equal"
    UNEQUAL = "unequal"  # reserved: the oracle never proves inequality
    UNKNOWN = "unknown"


# -- flattened terms ------------------------------------------------------------
#
# A flat term is a tuple of factors; a factor is ("g", name) or (op, flat)
# with op in "*", "+", "m".  The empty tuple is 1 and ops of 1 collapse to 1.

_OPS = {Star: "*", Plus: "+", Max: "m"}
_NODES = {"*": Star, "+": Plus, "m": Max}


def flatten(t: BiTerm) -> tuple:
    if isinstance(t, One):
        return ()
    if isinstance(t, Gen):
        return (("g", t.name),)
    if isinstance(t, Mul):
        return flatten(t.left) + flatten(t.right)
    inner = flatten(t.arg)
    return ((_OPS[type(t)], inner),) if inner else ()


def unflatten(flat: tuple) -> BiTerm:
    t: Optional[BiTerm] = None
    for kind, body in flat:
        f = Gen(body) if kind == "g" else _NODES[kind](unflatten(body))
        t = f if t is None else Mul(t, f)
    return One() if t is None else t


def flat_size(flat: tuple) -> int:
    return sum(1 if kind == "g" else 1 + flat_size(body) for kind, body in flat)


def _pattern(t: BiTerm) -> tuple:
    # generators of a scheme are its variables
    return tuple(("v", body) if kind == "g" else (kind, _pattern(unflatten(body))) for kind, body in flatten(t))


def _variables(p: tuple) -> set:
    out = set()
    for kind, body in p:
        if kind == "v":
            out.add(body)
        else:
            out |= _variables(body)
    return out


def _match(pat: tuple, seq: tuple, env: dict) -> Iterator[dict]:
    if not pat:
        if not seq:
            yield env
        return
    kind, body = pat[0]
    if kind == "v":
        bound = env.get(body)
        if bound is not None:
            if seq[: len(bound)] == bound:
                yield from _match(pat[1:], seq[len(bound) :], env)
            return
        for k in range(len(seq) + 1):
            yield from _match(pat[1:], seq[k:], {**env, body: seq[:k]})
        return
    if seq and seq[0][0] == kind:
        for inner in _match(body, seq[0][1], env):
            yield from _match(pat[1:], seq[1:], inner)


def _build(pat: tuple, env: dict) -> tuple:
    out: tuple = ()
    for kind, body in pat:
        if kind == "v":
            out += env[body]
        else:
            inner = _build(body, env)
            if inner:
                out += ((kind, inner),)
    return out


class TermOracle:
    def __init__(self, identities: Sequence[tuple[BiTerm, BiTerm]], slack: int = 4, max_states: int = 20_000):
        rules = []
        for l, r in identities:
            pl, pr = _pattern(l), _pattern(r)
            for a, b in ((pl, pr), (pr, pl)):
                if _variables(b) <= _variables(a):
                    rules.append((a, b))
        self.rules = rules
        self.slack = slack
        self.max_states = max_states

    def neighbours(self, seq: tuple) -> set:
        out = set()
        n = len(seq)
        for i in range(n):
            for j in range(i + 1, n + 1):
                window = seq[i:j]
                for lhs, rhs in self.rules:
                    for env in _match(lhs, window, {}):
                        out.add(seq[:i] + _build(rhs, env) + seq[j:])
            kind, body = seq[i]
            if kind != "g":
                for inner in self.neighbours(body):
                    wrapped = ((kind, inner),) if inner else ()
                    out.add(seq[:i] + wrapped + seq[i + 1 :])
        out.discard(seq)
        return out

    def _grow(self, seen: set, frontier: set, cap: int) -> set:
        nxt = set()
        for s in frontier:
            for t in self.neighbours(s):
                if t not in seen and flat_size(t) <= cap:
                    seen.add(t)
                    nxt.add(t)
                    if len(seen) >= self.max_states:
                        return nxt
        return nxt

    def equal(self, t1: BiTerm, t2: BiTerm, depth: int = 6) -> OracleVerdict:
        if depth < 1:
            raise ValueError("depth must be at least 1")
        a, b = flatten(t1), flatten(t2)
        if a == b:
            return OracleVerdict.EQUAL
        cap = max(flat_size(a), flat_size(b)) + self.slack
        seen_a, seen_b = {a}, {b}
        front_a, front_b = {a}, {b}
        for step in range(depth):
            # alternate sides so the two balls grow evenly
            if step % 2 == 0:
                front_a = self._grow(seen_a, front_a, cap)
            else:
                front_b = self._grow(seen_b, front_b, cap)
            if not seen_a.isdisjoint(seen_b):
                return OracleVerdict.EQUAL
        return OracleVerdict.UNKNOWN


VARIETY_SCHEMES = {
    Variety.FREE: (),
    Variety.LS: ("left_s",),
    Variety.RS: ("right_s",),
    Variety.S: ("left_s", "right_s"),
    Variety.P: ("perf",),
}


@lru_cache(maxsize=None)
def term_oracle(variety: Variety) -> TermOracle:
    from .ffbr import SCHEMES

    names = ("birestriction-axioms", "a1n", "M2") + VARIETY_SCHEMES[variety]
    return TermOracle([pair for name in names for pair in SCHEMES[name]])


# -- signed words -----------------------------------------------------------------


def _pos(*labels: Label) -> Word:
    return tuple(SignedLetter(a, 1) for a in labels)


def _inv(w: Word) -> Word:
    return tuple(a.inverse() for a in reversed(w))


def relation_instances(variety: Variety, letters: Sequence[str], max_bar: int) -> list[tuple[Word, Word]]:
    """Instances of the defining relations over bars of length at most ``max_bar``."""
    from itertools import product as cartesian

    pairs = []
    for x in letters:
        px, bx = _pos(Plain(x)), _pos(Barred((x,)))
        pairs.append((px, bx + _inv(px) + px))  # x = xbar x^*
    if variety is Variety.P:
        for n in range(2, max_bar + 1):
            for word in cartesian(letters, repeat=n):
                pairs.append((_pos(Barred(word)), _pos(*[Barred((x,)) for x in word])))
        return pairs
    words = [w for n in range(1, max_bar + 1) for w in cartesian(letters, repeat=n)]
    for u in words:
        for v in words:
            if len(u) + len(v) > max_bar:
                continue
            bu, bv, buv = _pos(Barred(u)), _pos(Barred(v)), _pos(Barred(u + v))
            lhs = bu + bv
            if variety is Variety.FREE:
                pairs.append((lhs, buv + _inv(lhs) + lhs))
            if variety in (Variety.LS, Variety.S):
                pairs.append((lhs, bu + _inv(bu) + buv))
            if variety in (Variety.RS, Variety.S):
                pairs.append((lhs, buv + _inv(bv) + bv))
    return pairs


def munn_key(w: Word) -> tuple:
    tree = munn_of_pairs((a.base, a.sign) for a in w)
    return tree.vertices, tree.endpoint


class WordOracle:
    def __init__(self, variety: Variety, letters: Sequence[str], max_bar: int = 2, slack: int = 6, max_states: int = 4000):
        self.variety = variety
        self.rules = []
        for l, r in relation_instances(variety, letters, max_bar):
            self.rules += [(l, r), (r, l)]
        self.slack = slack
        self.max_states = max_states
        self._reach: dict[tuple[Word, int], frozenset] = {}

    def neighbours(self, w: Word) -> set:
        out = set()
        n = len(w)
        for lhs, rhs in self.rules:
            k = len(lhs)
            for i in range(n - k + 1):
                if w[i : i + k] == lhs:
                    out.add(w[:i] + rhs + w[i + k :])
        for i, a in enumerate(w):
            out.add(w[: i + 1] + (a.inverse(), a) + w[i + 1 :])  # a -> a a' a
            if i + 2 < n and w[i + 1] == a.inverse() and w[i + 2] == a:
                out.add(w[: i + 1] + w[i + 3 :])
            if i + 3 < n and w[i + 1] == a.inverse() and w[i + 3] == w[i + 2].inverse():
                out.add(w[:i] + w[i + 2 : i + 4] + w[i : i + 2] + w[i + 4 :])  # commute idempotents
        out.discard(w)
        return out

    def reach(self, w: Word, depth: int) -> frozenset:
        """Munn keys of every word reachable from ``w`` in at most ``depth`` moves."""
        w = tuple(w)
        hit = self._reach.get((w, depth))
        if hit is not None:
            return hit
        cap = len(w) + self.slack
        seen = {w}
        queue = deque([(w, 0)])
        while queue and len(seen) < self.max_states:
            v, d = queue.popleft()
            if d == depth:
                continue
            for x in self.neighbours(v):
                if x not in seen and len(x) <= cap:
                    seen.add(x)
                    queue.append((x, d + 1))
        keys = frozenset(munn_key(v) for v in seen)
        self._reach[(w, depth)] = keys
        return keys

    def equal(self, w1: Word, w2: Word, depth: int = 6) -> OracleVerdict:
        if depth < 1:
            raise ValueError("depth must be at least 1")
        if munn_key(w1) == munn_key(w2):
            return OracleVerdict.EQUAL
        half = (depth + 1) // 2
        if self.reach(w1, half).isdisjoint(self.reach(w2, depth - half)):
            return OracleVerdict.UNKNOWN
        return OracleVerdict.EQUAL
