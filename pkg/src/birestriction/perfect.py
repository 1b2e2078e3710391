"""Geometric model of the free perfect F-birestriction monoid.

Elements are pairs ``(gamma, u)`` where ``gamma`` is a finite subgraph of the
Cayley graph of the free group through the origin.  Each tree edge
``(g, x, gx)`` carries a plain copy, a barred copy, or both, and a plain copy
always has its barred twin.  Vertices are reduced group words, so equality is
plain set equality and no isomorphism search is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import freegroup as fg
from .automata import InverseAutomaton, iso_check
from .freegroup import GroupWord
from .terms import Alphabet, Barred, BiTerm, Gen, Max, Mul, One, Plain, Plus, Star, Variety, format_term, sigma_image

PLAIN = "P"
BARRED = "B"

TwinEdge = tuple[GroupWord, str, str]  # (source, letter, PLAIN|BARRED); target is source * letter


class Discrepancy(AssertionError):
    """The two models of the perfect case disagree on a pair."""


def _target(g: GroupWord, x: str) -> GroupWord:
    return fg.multiply(g, ((x, 1),))


@dataclass(frozen=True)
class TwinGraph:
    vertices: frozenset
    edges: frozenset

    def __post_init__(self):
        if () not in self.vertices:
            raise ValueError("twin graph must contain the origin")
        spans = set()
        for g, x, kind in self.edges:
            if kind == PLAIN and (g, x, BARRED) not in self.edges:
                raise ValueError(f"plain edge {fg.format_group_word(g)} --{x}--> lacks its barred twin")
            h = _target(g, x)
            if g not in self.vertices or h not in self.vertices:
                raise ValueError("edge leaves the vertex set")
            spans.add((g, x))
        for v in self.vertices:
            if not v:
                continue
            parent, (x, sign) = v[:-1], v[-1]
            if parent not in self.vertices:
                raise ValueError("vertex set is not connected in the Cayley tree")
            if ((parent, x) if sign > 0 else (v, x)) not in spans:
                raise ValueError(f"vertex {fg.format_group_word(v)} is not joined to its parent")

    def shifted(self, g: GroupWord) -> tuple[frozenset, frozenset]:
        """Vertices and edges of ``g * self``, which need not contain the origin."""
        return (
            frozenset(fg.multiply(g, v) for v in self.vertices),
            frozenset((fg.multiply(g, s), x, k) for s, x, k in self.edges),
        )

    def translate(self, g: GroupWord) -> "TwinGraph":
        return TwinGraph(*self.shifted(g))

    def serialize(self) -> list[tuple[str, str, str]]:
        rows = []
        for g, x, kind in self.edges:
            label = x if kind == PLAIN else f"[{x}]"
            rows.append((fg.format_group_word(g), label, fg.format_group_word(_target(g, x))))
        return sorted(rows)

    def to_automaton(self) -> InverseAutomaton:
        order = sorted(self.vertices, key=lambda v: (len(v), repr(v)))
        index = {v: i for i, v in enumerate(order)}
        edges = frozenset(
            (index[g], Plain(x) if kind == PLAIN else Barred((x,)), index[_target(g, x)]) for g, x, kind in self.edges
        )
        return InverseAutomaton(frozenset(index.values()), edges, index[()], index[()])

    def to_dot(self, name: str = "G") -> str:
        order = sorted(self.vertices, key=lambda v: (len(v), repr(v)))
        index = {v: i for i, v in enumerate(order)}
        lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=point];"]
        for v in order:
            lines.append(f'  v{index[v]} [xlabel="{fg.format_group_word(v)}"];')
        rows = sorted((index[g], kind, x, index[_target(g, x)]) for g, x, kind in self.edges)
        for s, kind, x, t in rows:
            label, style = (x, "solid") if kind == PLAIN else (f"[{x}]", "dashed")
            lines.append(f'  v{s} -> v{t} [label="{label}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


ORIGIN = TwinGraph(frozenset({()}), frozenset())


def barred_path(u: tuple[str, ...]) -> TwinGraph:
    g: GroupWord = ()
    vertices, edges = {g}, set()
    for x in u:
        edges.add((g, x, BARRED))
        g = _target(g, x)
        vertices.add(g)
    return TwinGraph(frozenset(vertices), frozenset(edges))


@dataclass(frozen=True)
class CayleyPerfectElement:
    gamma: TwinGraph
    u: tuple[str, ...] = ()

    def __post_init__(self):
        if not barred_path(self.u).edges <= self.gamma.edges:
            raise ValueError("the barred path of u must lie in the graph")

    def __mul__(self, other: "CayleyPerfectElement") -> "CayleyPerfectElement":
        vertices, edges = other.gamma.shifted(fg.positive(self.u))
        gamma = TwinGraph(self.gamma.vertices | vertices, self.gamma.edges | edges)
        return CayleyPerfectElement(gamma, self.u + other.u)

    def star(self) -> "CayleyPerfectElement":
        return CayleyPerfectElement(self.gamma.translate(fg.inverse(fg.positive(self.u))), ())

    def plus(self) -> "CayleyPerfectElement":
        return CayleyPerfectElement(self.gamma, ())

    def maximum(self) -> "CayleyPerfectElement":
        return CayleyPerfectElement(barred_path(self.u), self.u)


P_ONE = CayleyPerfectElement(ORIGIN, ())


def p_generator(x: str) -> CayleyPerfectElement:
    g = TwinGraph(frozenset({(), ((x, 1),)}), frozenset({((), x, PLAIN), ((), x, BARRED)}))
    return CayleyPerfectElement(g, (x,))


@lru_cache(maxsize=1 << 15)
def _eval_p(t: BiTerm) -> CayleyPerfectElement:
    if isinstance(t, One):
        return P_ONE
    if isinstance(t, Gen):
        return p_generator(t.name)
    if isinstance(t, Mul):
        return _eval_p(t.left) * _eval_p(t.right)
    if isinstance(t, Star):
        return _eval_p(t.arg).star()
    if isinstance(t, Plus):
        return _eval_p(t.arg).plus()
    if isinstance(t, Max):
        u = sigma_image(t.arg)
        return CayleyPerfectElement(barred_path(u), u)
    raise TypeError(f"not a term: {t!r}")


def eval_p(t: BiTerm, alphabet: Alphabet | None = None) -> CayleyPerfectElement:
    if alphabet is not None:
        from .terms import term_letters

        stray = term_letters(t) - set(alphabet.letters)
        if stray:
            raise ValueError(f"term uses letters outside the alphabet: {sorted(stray)}")
    return _eval_p(t)


def decide_equal_p(t1: BiTerm, t2: BiTerm, alphabet: Alphabet | None = None) -> bool:
    return eval_p(t1, alphabet) == eval_p(t2, alphabet)


def leq_p(a: CayleyPerfectElement, b: CayleyPerfectElement) -> bool:
    return a.u == b.u and a.gamma.edges >= b.gamma.edges


def crosscheck(t1: BiTerm, t2: BiTerm, ctx) -> bool:
    """Decide ``t1 = t2`` in both perfect-case models and insist they agree."""
    from .ffbr import decide_equal

    if ctx.variety is not Variety.P:
        raise ValueError("crosscheck runs in the perfect variety only")
    geometric = decide_equal_p(t1, t2, ctx.alphabet)
    algebraic = decide_equal(t1, t2, ctx)
    if geometric != algebraic:
        raise Discrepancy(
            f"models disagree on {format_term(t1)} vs {format_term(t2)}: "
            f"cayley={geometric} closure={algebraic}"
        )
    return geometric


def same_shape(t: BiTerm, ctx) -> bool:
    """The twin graph of ``t`` and the closed automaton of ``t`` are isomorphic."""
    from .ffbr import evaluate

    geo = eval_p(t, ctx.alphabet)
    alg = evaluate(t, ctx)
    return geo.u == alg.u and iso_check(geo.gamma.to_automaton(), alg.graph)
