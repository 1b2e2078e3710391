"""Munn trees: the free inverse monoid and the free birestriction monoid.

A Munn tree is a finite prefix-closed set of reduced words (a subtree of the
Cayley tree of the free group through the origin) together with an
endpoint.  Pairs ``(e, u)`` with ``e`` an idempotent tree containing the
positive word ``u`` model the free birestriction monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import freegroup as fg
from .freegroup import GroupWord
from .terms import (
    Barred,
    BiTerm,
    Gen,
    Max,
    Mul,
    One,
    Plain,
    Plus,
    Star,
    Word,
    format_term,
    gens,
    product,
    sigma_image,
)


def _prefix_closed(vertices: frozenset) -> bool:
    return () in vertices and all(v[:-1] in vertices for v in vertices if v)


@dataclass(frozen=True)
class MunnTree:
    vertices: frozenset
    endpoint: GroupWord = ()

    def __post_init__(self):
        if not _prefix_closed(self.vertices):
            raise ValueError("Munn tree vertex set must be prefix closed and contain 1")
        if self.endpoint not in self.vertices:
            raise ValueError("endpoint must be a vertex")

    def translate(self, g: GroupWord) -> frozenset:
        return frozenset(fg.multiply(g, v) for v in self.vertices)

    def is_idempotent(self) -> bool:
        return self.endpoint == ()

    def serialize(self) -> str:
        rows = sorted(fg.format_group_word(v) for v in self.vertices)
        return "vertices: " + "; ".join(rows) + "\nendpoint: " + fg.format_group_word(self.endpoint) + "\n"

    def to_dot(self, name: str = "T") -> str:
        order = sorted(self.vertices, key=lambda v: (len(v), [(str(a), s) for a, s in v]))
        index = {v: i for i, v in enumerate(order)}
        lines = [f"digraph {name} {{", "  node [shape=point];"]
        for v in order:
            lines.append(f'  v{index[v]} [xlabel="{fg.format_group_word(v)}"];')
        for v in order:
            if v:
                parent, (gen, sign) = v[:-1], v[-1]
                s, t = (parent, v) if sign > 0 else (v, parent)
                lines.append(f'  v{index[s]} -> v{index[t]} [label="{gen}", style=solid];')
        lines.append(f'  v{index[()]} [shape=circle, width=0.1, label=""];')
        lines.append(f'  v{index[self.endpoint]} [shape=doublecircle, width=0.1, label=""];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def munn_of_pairs(pairs: Iterable[tuple]) -> MunnTree:
    g: GroupWord = ()
    seen = {g}
    for gen, sign in pairs:
        g = fg.multiply(g, ((gen, sign),))
        seen.add(g)
    return MunnTree(frozenset(seen), g)


def munn_of_word(w: Word) -> MunnTree:
    pairs = []
    for a in w:
        if not isinstance(a.base, Plain):
            raise ValueError(f"Munn trees over X take plain letters only, got {a}")
        pairs.append((a.base.name, a.sign))
    return munn_of_pairs(pairs)


IDENTITY_TREE = MunnTree(frozenset({()}), ())


def fi_mul(s: MunnTree, t: MunnTree) -> MunnTree:
    return MunnTree(s.vertices | t.translate(s.endpoint), fg.multiply(s.endpoint, t.endpoint))


def fi_inv(s: MunnTree) -> MunnTree:
    g = fg.inverse(s.endpoint)
    return MunnTree(s.translate(g), g)


def fi_plus(s: MunnTree) -> MunnTree:
    return MunnTree(s.vertices, ())


def fi_star(s: MunnTree) -> MunnTree:
    return MunnTree(s.translate(fg.inverse(s.endpoint)), ())


# -- E(FI(X)) x| X* -------------------------------------------------------------


@dataclass(frozen=True)
class FBRElement:
    tree: frozenset
    u: tuple[str, ...] = ()

    def __post_init__(self):
        if not _prefix_closed(self.tree):
            raise ValueError("tree must be prefix closed and contain 1")
        if fg.positive(self.u) not in self.tree:
            raise ValueError(f"tree must contain the vertex {self.u}")


FBR_ONE = FBRElement(frozenset({()}), ())


def fbr_generator(x: str) -> FBRElement:
    return FBRElement(frozenset({(), ((x, 1),)}), (x,))


def fbr_positive(u: tuple[str, ...]) -> FBRElement:
    """The element ``(u^+, u)``: the geodesic of ``u`` with second coordinate ``u``."""
    return FBRElement(fg.prefixes(fg.positive(u)), tuple(u))


def fbr_mul(a: FBRElement, b: FBRElement) -> FBRElement:
    shift = fg.positive(a.u)
    return FBRElement(a.tree | frozenset(fg.multiply(shift, v) for v in b.tree), a.u + b.u)


def fbr_star(a: FBRElement) -> FBRElement:
    back = fg.inverse(fg.positive(a.u))
    return FBRElement(frozenset(fg.multiply(back, v) for v in a.tree), ())


def fbr_plus(a: FBRElement) -> FBRElement:
    return FBRElement(a.tree, ())


def fbr_max(a: FBRElement) -> FBRElement:
    return fbr_positive(a.u)


def fbr_eval(t: BiTerm) -> FBRElement:
    if isinstance(t, One):
        return FBR_ONE
    if isinstance(t, Gen):
        return fbr_generator(t.name)
    if isinstance(t, Mul):
        return fbr_mul(fbr_eval(t.left), fbr_eval(t.right))
    if isinstance(t, Star):
        return fbr_star(fbr_eval(t.arg))
    if isinstance(t, Plus):
        return fbr_plus(fbr_eval(t.arg))
    if isinstance(t, Max):
        return fbr_positive(sigma_image(t.arg))
    raise TypeError(f"not a term: {t!r}")


def fbr_equal(t1: BiTerm, t2: BiTerm) -> bool:
    return fbr_eval(t1) == fbr_eval(t2)


def fbr_leq(a: FBRElement, b: FBRElement) -> bool:
    return a.u == b.u and a.tree >= b.tree


def psi_fi(t: BiTerm) -> MunnTree:
    """Evaluate a term without ``M`` in the free inverse monoid."""
    if isinstance(t, One):
        return IDENTITY_TREE
    if isinstance(t, Gen):
        return munn_of_pairs([(t.name, 1)])
    if isinstance(t, Mul):
        return fi_mul(psi_fi(t.left), psi_fi(t.right))
    if isinstance(t, Star):
        return fi_star(psi_fi(t.arg))
    if isinstance(t, Plus):
        return fi_plus(psi_fi(t.arg))
    if isinstance(t, Max):
        raise ValueError(f"psi_fi takes terms without M: {format_term(t)}")
    raise TypeError(f"not a term: {t!r}")


# -- the projection map D --------------------------------------------------------


def _letter_term(base) -> BiTerm:
    if isinstance(base, Plain):
        return Gen(base.name)
    if isinstance(base, Barred):
        return Max(gens(base.word))
    raise TypeError(f"not a letter: {base!r}")


def d_term(w: Word) -> BiTerm:
    """The projection ``D_w``, peeling maximal same-sign runs off the right.

    ``D_{u v} = (D_u v)^*`` for a positive run ``v`` and
    ``D_{u v^-1} = (v D_u)^+`` for a negative one.  Barred letters become
    ``M(u)``, the maximum element they name.
    """
    runs: list[tuple[int, list]] = []
    for a in w:
        if runs and runs[-1][0] == a.sign:
            runs[-1][1].append(a.base)
        else:
            runs.append((a.sign, [a.base]))
    t: BiTerm | None = None
    for sign, bases in runs:
        if sign > 0:
            factors = [_letter_term(b) for b in bases]
            t = Star(product(factors if t is None else [t] + factors))
        else:
            factors = [_letter_term(b) for b in reversed(bases)]
            block = product(factors)
            t = Plus(block if t is None else Mul(block, t))
    return One() if t is None else t
