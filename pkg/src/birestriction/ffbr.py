"""Coordinatized free F-birestriction monoids.

An element is a pair ``(e, u)``: ``e`` is an idempotent of the inverse
monoid attached to the variety, stored as a closed automaton with
``start == end``, and ``u`` is a positive word over ``X``.  The bar of
``u`` must be readable in ``e`` from the root.

    (e, u)(f, v) = (e (u f)^+, uv)
    (e, u)^*     = ((e u)^*, 1)
    (e, u)^+     = (e, 1)
    m(e, u)      = (u^+, u)

where ``u`` inside a graph product stands for its barred spelling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Optional

from .automata import InverseAutomaton, canonical_serialize, glue, relabel, rooted_morphism, trivial
from .stephen import DEFAULT_BUDGET, BudgetLike, _limit, close, closure_of_word
from .terms import (
    Alphabet,
    Barred,
    BiTerm,
    Gen,
    Max,
    Mul,
    One,
    Plain,
    Plus,
    SignedLetter,
    Star,
    Variety,
    Word,
    parse_term,
    sigma_image,
    substitute,
    term_letters,
)


def bar_spelling(u: tuple[str, ...], variety: Variety) -> Word:
    """The word naming the maximum of ``u``'s class: one barred letter, or ``x1bar...xnbar`` in P."""
    if not u:
        return ()
    if variety is Variety.P:
        return tuple(SignedLetter(Barred((x,)), 1) for x in u)
    return (SignedLetter(Barred(tuple(u)), 1),)


@dataclass(frozen=True, eq=False)
class FFBRElement:
    graph: InverseAutomaton
    u: tuple[str, ...]
    variety: Variety

    def __post_init__(self):
        g = self.graph
        if g.start != g.end:
            raise ValueError("idempotent coordinate must have start == end")
        if g.read(g.start, bar_spelling(self.u, self.variety)) is None:
            raise ValueError(f"bar of {''.join(self.u) or '1'} is not readable from the root")

    @cached_property
    def key(self) -> tuple:
        return (self.variety, self.u, canonical_serialize(self.graph))

    def __eq__(self, other) -> bool:
        return isinstance(other, FFBRElement) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def u_end(self) -> int:
        """The vertex reached by reading the bar of ``u`` from the root."""
        return self.graph.read(self.graph.start, bar_spelling(self.u, self.variety))

    def to_record(self, verdicts: Optional[Mapping] = None) -> dict:
        return {
            "variety": self.variety.value,
            "u": "".join(self.u) if all(len(x) == 1 for x in self.u) else ".".join(self.u),
            "graph": canonical_serialize(self.graph).hex(),
            "verdicts": dict(verdicts or {}),
        }

    def to_json(self, verdicts: Optional[Mapping] = None) -> str:
        return json.dumps(self.to_record(verdicts), sort_keys=True)

    def __repr__(self) -> str:
        return f"FFBRElement(u={''.join(self.u) or '1'}, |V|={len(self.graph.vertices)}, variety={self.variety.value})"


@dataclass(frozen=True)
class VarietyContext:
    alphabet: Alphabet
    variety: Variety = Variety.FREE
    budget: int = DEFAULT_BUDGET
    seed: int = 0

    def __post_init__(self):
        _limit(self.budget)

    def parse(self, text: str) -> BiTerm:
        return parse_term(text, self.alphabet)

    def check(self, t: BiTerm) -> BiTerm:
        stray = term_letters(t) - set(self.alphabet.letters)
        if stray:
            raise ValueError(f"term uses letters outside the alphabet: {sorted(stray)}")
        return t


def _root(a: InverseAutomaton) -> InverseAutomaton:
    return relabel(a.reroot(a.start, a.start))


@lru_cache(maxsize=4096)
def positive_graph(u: tuple[str, ...], variety: Variety, limit: int = DEFAULT_BUDGET) -> InverseAutomaton:
    """Closed graph of the bar of ``u`` rooted at its start, i.e. ``ubar^+``."""
    if not u:
        return trivial()
    return _root(closure_of_word(bar_spelling(u, variety), variety, limit))


@lru_cache(maxsize=256)
def _generator_graph(x: str, variety: Variety, limit: int) -> InverseAutomaton:
    return _root(closure_of_word((SignedLetter(Plain(x), 1),), variety, limit))


def positive_element(u: tuple[str, ...], variety: Variety, budget: BudgetLike = None) -> FFBRElement:
    """The maximum element ``(ubar^+, u)`` of the class of ``u``."""
    return FFBRElement(positive_graph(tuple(u), variety, _limit(budget)), tuple(u), variety)


@lru_cache(maxsize=4096)
def _plain_graph(u: tuple[str, ...], variety: Variety, limit: int) -> InverseAutomaton:
    if not u:
        return trivial()
    return _root(closure_of_word(tuple(SignedLetter(Plain(x), 1) for x in u), variety, limit))


def plain_element(u: tuple[str, ...], variety: Variety, budget: BudgetLike = None) -> FFBRElement:
    """The image ``(u^+, u)`` of the positive word ``u`` read with plain letters."""
    return FFBRElement(_plain_graph(tuple(u), variety, _limit(budget)), tuple(u), variety)


def identity(variety: Variety) -> FFBRElement:
    return FFBRElement(trivial(), (), variety)


def generator(x: str, variety: Variety, budget: BudgetLike = None) -> FFBRElement:
    return FFBRElement(_generator_graph(x, variety, _limit(budget)), (x,), variety)


def mul(a: FFBRElement, b: FFBRElement, budget: BudgetLike = None) -> FFBRElement:
    if a.variety is not b.variety:
        raise ValueError("operands come from different varieties")
    if not a.u:
        left = a.graph
    else:
        left = a.graph.reroot(a.graph.start, a.u_end())
    if not b.u and len(b.graph.vertices) == 1:
        return FFBRElement(a.graph, a.u, a.variety)
    joined, _ = close(glue(left, b.graph), a.variety, budget)
    return FFBRElement(_root(joined), a.u + b.u, a.variety)


def star(a: FFBRElement) -> FFBRElement:
    p = a.u_end()
    return FFBRElement(relabel(a.graph.reroot(p, p)), (), a.variety)


def plus(a: FFBRElement) -> FFBRElement:
    return FFBRElement(a.graph, (), a.variety)


def maximum(a: FFBRElement, budget: BudgetLike = None) -> FFBRElement:
    return positive_element(a.u, a.variety, budget)


@lru_cache(maxsize=1 << 15)
def _eval(t: BiTerm, variety: Variety, limit: int) -> FFBRElement:
    if isinstance(t, One):
        return identity(variety)
    if isinstance(t, Gen):
        return generator(t.name, variety, limit)
    if isinstance(t, Mul):
        return mul(_eval(t.left, variety, limit), _eval(t.right, variety, limit), limit)
    if isinstance(t, Star):
        return star(_eval(t.arg, variety, limit))
    if isinstance(t, Plus):
        return plus(_eval(t.arg, variety, limit))
    if isinstance(t, Max):
        return positive_element(sigma_image(t.arg), variety, limit)
    raise TypeError(f"not a term: {t!r}")


def evaluate(t: BiTerm, ctx: VarietyContext) -> FFBRElement:
    return _eval(ctx.check(t), ctx.variety, ctx.budget)


def decide_equal(t1: BiTerm, t2: BiTerm, ctx: VarietyContext) -> bool:
    return evaluate(t1, ctx) == evaluate(t2, ctx)


def element_leq(a: FFBRElement, b: FFBRElement) -> bool:
    # e <= f iff f's graph maps into e's graph fixing the root
    return a.u == b.u and rooted_morphism(a.graph, b.graph) is not None


def leq(t1: BiTerm, t2: BiTerm, ctx: VarietyContext) -> bool:
    return element_leq(evaluate(t1, ctx), evaluate(t2, ctx))


def sigma_related(t1: BiTerm, t2: BiTerm, ctx: VarietyContext) -> bool:
    return sigma_image(ctx.check(t1)) == sigma_image(ctx.check(t2))


def max_element(t: BiTerm, ctx: VarietyContext) -> FFBRElement:
    return positive_element(sigma_image(ctx.check(t)), ctx.variety, ctx.budget)


# -- identity schemes -------------------------------------------------------------

_SCHEME_TEXT: dict[str, tuple[tuple[str, str], ...]] = {
    "right_rest": (
        ("x x^*", "x"),
        ("x^* y^*", "y^* x^*"),
        ("(x y^*)^*", "x^* y^*"),
        ("x^* y", "y (x y)^*"),
    ),
    "left_rest": (
        ("x^+ x", "x"),
        ("x^+ y^+", "y^+ x^+"),
        ("(x^+ y)^+", "x^+ y^+"),
        ("x y^+", "(x y)^+ x"),
    ),
    "rest": (
        ("(x^+)^*", "x^+"),
        ("(x^*)^+", "x^*"),
    ),
    "derived": (
        ("(x y)^*", "(x^* y)^*"),
        ("(x y)^+", "(x y^+)^+"),
        ("y^* x", "x (y^* x)^*"),
        ("x y^*", "(x y^*)^+ x"),
        ("(x y^*)^*", "x^* y^*"),
        ("(y^* x)^+", "y^* x^+"),
    ),
    "a1n": (("M(x) x^*", "x"),),
    "M2": (("M(x y^*)", "M(x)"),),
    "left_s": (("M(x) M(y)", "M(x)^+ M(x y)"),),
    "right_s": (("M(x) M(y)", "M(x y) M(y)^*"),),
    "perf": (("M(x) M(y)", "M(x y)"),),
}

SCHEME_VARIABLES = Alphabet(("x", "y"))

SCHEMES: dict[str, tuple[tuple[BiTerm, BiTerm], ...]] = {
    name: tuple((parse_term(l, SCHEME_VARIABLES), parse_term(r, SCHEME_VARIABLES)) for l, r in pairs)
    for name, pairs in _SCHEME_TEXT.items()
}
SCHEMES["birestriction-axioms"] = SCHEMES["right_rest"] + SCHEMES["left_rest"] + SCHEMES["rest"] + SCHEMES["derived"]

# which varieties each scheme holds in; the axioms, a1n and M2 hold everywhere
HOLDS_IN: dict[str, frozenset[Variety]] = {
    "left_s": frozenset({Variety.LS, Variety.S, Variety.P}),
    "right_s": frozenset({Variety.RS, Variety.S, Variety.P}),
    "perf": frozenset({Variety.P}),
}


def scheme_holds_in(name: str, variety: Variety) -> bool:
    return variety in HOLDS_IN.get(name, frozenset(Variety))


def instantiate(name: str, substitution: Mapping[str, BiTerm]) -> list[tuple[BiTerm, BiTerm]]:
    if name not in SCHEMES:
        raise KeyError(f"unknown identity scheme {name!r}; choose from {sorted(SCHEMES)}")
    mapping = {"x": substitution.get("x", Gen("x")), "y": substitution.get("y", Gen("y"))}
    return [(substitute(l, mapping), substitute(r, mapping)) for l, r in SCHEMES[name]]


def check_identity(name: str, substitution: Mapping[str, BiTerm], ctx: VarietyContext) -> bool:
    return all(decide_equal(l, r, ctx) for l, r in instantiate(name, substitution))


def oracle_equal(t1: BiTerm, t2: BiTerm, ctx: VarietyContext, depth: int = 6):
    from .oracle import term_oracle

    return term_oracle(ctx.variety).equal(t1, t2, depth)
