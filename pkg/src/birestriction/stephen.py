"""Closure of inverse automata under the variety relations.

Each rule sews one relation onto the graph and folds.  After folding, the
net effect of every expansion is a single added edge:

* ``R1``  ``(a, x, b)`` with ``x`` plain gives ``(a, [x], b)``.
* ``R2``  ``(a, [u], b)`` and ``(b, [v], c)`` give ``(a, [uv], c)``.
* ``R3``  ``(a, [u], b)`` and ``(a, [uv], c)`` give ``(b, [v], c)``.
* ``R4``  ``(b, [v], c)`` and ``(a, [uv], c)`` give ``(a, [u], b)``.

FREE uses R1 and R2, LS adds R3, RS adds R4, S adds both.  The perfect
variety works over single-letter bars only and uses R1 alone.  No rule
creates vertices, so a closed graph never has more vertices than the folded
input.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence, Union

from .automata import InverseAutomaton, Workspace, accepts, glue, linear_graph, relabel
from .terms import Barred, Label, Plain, Variety, Word, encode_label, expand_barred

DEFAULT_BUDGET = 100_000

RULES = {
    Variety.FREE: ("R1", "R2"),
    Variety.LS: ("R1", "R2", "R3"),
    Variety.RS: ("R1", "R2", "R4"),
    Variety.S: ("R1", "R2", "R3", "R4"),
    Variety.P: ("R1",),
}


class BudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ClosureBudget:
    max_events: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_events < 1:
            raise ValueError("budget must allow at least one event")


BudgetLike = Union[ClosureBudget, int, None]


def _limit(budget: BudgetLike) -> int:
    if budget is None:
        return DEFAULT_BUDGET
    if isinstance(budget, ClosureBudget):
        return budget.max_events
    return ClosureBudget(budget).max_events


class TraceEvent(NamedTuple):
    rule: str
    alpha: int
    beta: int
    gamma: Optional[int] = None
    edge: Optional[tuple[int, Label, int]] = None

    def __str__(self) -> str:
        gamma = "-" if self.gamma is None else str(self.gamma)
        label = "-" if self.edge is None else encode_label(self.edge[1])
        return f"{self.rule} {self.alpha} {self.beta} {gamma} {label}"


def format_trace(trace: Sequence[TraceEvent]) -> str:
    return "".join(f"{ev}\n" for ev in trace)


def _barred_edges(row: dict[Label, int]):
    return [(lab, t) for lab, t in row.items() if isinstance(lab, Barred)]


def _instances(ws: Workspace, rules: Sequence[str]) -> list[TraceEvent]:
    """All rule instances whose conclusion is missing, grouped by rule."""
    found: list[TraceEvent] = []
    find = ws.find
    roots = sorted(ws.out)
    if "R1" in rules:
        for a in roots:
            for lab, b in ws.out[a].items():
                if isinstance(lab, Plain):
                    bar = Barred((lab.name,))
                    if not ws.has_edge(a, bar, b):
                        found.append(TraceEvent("R1", a, find(b), None, (a, bar, find(b))))
    if "R2" in rules:
        for b in roots:
            ins = _barred_edges(ws.inn[b])
            outs = _barred_edges(ws.out[b])
            for u, a in ins:
                for v, c in outs:
                    lab = Barred(u.word + v.word)
                    if not ws.has_edge(a, lab, c):
                        found.append(TraceEvent("R2", find(a), b, find(c), (find(a), lab, find(c))))
    if "R3" in rules:
        for a in roots:
            outs = _barred_edges(ws.out[a])
            for u, b in outs:
                for w, c in outs:
                    k = len(u.word)
                    if len(w.word) > k and w.word[:k] == u.word:
                        lab = Barred(w.word[k:])
                        if not ws.has_edge(b, lab, c):
                            found.append(TraceEvent("R3", a, find(b), find(c), (find(b), lab, find(c))))
    if "R4" in rules:
        for c in roots:
            ins = _barred_edges(ws.inn[c])
            for v, b in ins:
                for w, a in ins:
                    k = len(v.word)
                    if len(w.word) > k and w.word[-k:] == v.word:
                        lab = Barred(w.word[:-k])
                        if not ws.has_edge(a, lab, b):
                            found.append(TraceEvent("R4", find(a), find(b), c, (find(a), lab, find(b))))
    return found


def _check_alphabet(a: InverseAutomaton, variety: Variety) -> None:
    if variety is Variety.P:
        for lab in a.labels():
            if isinstance(lab, Barred) and len(lab.word) > 1:
                raise ValueError(f"perfect variety works over single-letter bars; got {lab}")


def close(
    a: InverseAutomaton,
    variety: Variety,
    budget: BudgetLike = None,
    rng: Optional[random.Random] = None,
) -> tuple[InverseAutomaton, list[TraceEvent]]:
    """Fold and expand until no rule applies.

    Rule instances are collected per round in the order R1..R4 and applied
    first-in first-out; ``rng`` shuffles both the folding order and every
    round's worklist.
    """
    _check_alphabet(a, variety)
    limit = _limit(budget)
    rules = RULES[variety]
    raw: list = []
    ws = Workspace.of(a, rng, trace=raw)
    ws.drain()
    trace: list[TraceEvent] = []

    def flush_folds():
        trace.extend(TraceEvent("FOLD", x, y) for _, x, y in raw)
        raw.clear()

    flush_folds()
    events = 0
    while True:
        work = _instances(ws, rules)
        if not work:
            break
        if rng is not None:
            rng.shuffle(work)
        for inst in work:
            s, lab, t = inst.edge
            if ws.has_edge(s, lab, t):
                continue
            events += 1
            if events > limit:
                raise BudgetExhausted(f"closure exceeded {limit} expansion events")
            s, t = ws.find(s), ws.find(t)
            trace.append(inst._replace(edge=(s, lab, t)))
            ws.add_edge(s, lab, t)
            ws.drain()
            flush_folds()
    return ws.export(a.start, a.end), trace


def replay(a: InverseAutomaton, trace: Sequence[TraceEvent]) -> InverseAutomaton:
    """Re-apply the recorded edge additions to ``a`` and fold."""
    ws = Workspace.of(a)
    for ev in trace:
        if ev.rule == "FOLD":
            ws.merge(ev.alpha, ev.beta)
        else:
            ws.add_edge(*ev.edge)
        ws.drain()
    return ws.export(a.start, a.end)


def prepare_word(w: Word, variety: Variety) -> Word:
    return expand_barred(w) if variety is Variety.P else w


@lru_cache(maxsize=1 << 14)
def _closure_cached(w: Word, variety: Variety, limit: int) -> InverseAutomaton:
    return relabel(close(linear_graph(prepare_word(w, variety)), variety, limit)[0])


def closure_of_word(w: Word, variety: Variety, budget: BudgetLike = None) -> InverseAutomaton:
    return _closure_cached(tuple(w), variety, _limit(budget))


def decide_equal_inv(w1: Word, w2: Word, variety: Variety, budget: BudgetLike = None) -> bool:
    g1 = closure_of_word(w1, variety, budget)
    g2 = closure_of_word(w2, variety, budget)
    return accepts(g1, prepare_word(w2, variety)) and accepts(g2, prepare_word(w1, variety))


def is_idempotent(w: Word, variety: Variety, budget: BudgetLike = None) -> bool:
    return decide_equal_inv(w, tuple(w) + tuple(w), variety, budget)


# -- arithmetic on closed automata -------------------------------------------


def mul_inv(a: InverseAutomaton, b: InverseAutomaton, variety: Variety, budget: BudgetLike = None) -> InverseAutomaton:
    return relabel(close(glue(a, b), variety, budget)[0])


def plus_inv(a: InverseAutomaton) -> InverseAutomaton:
    return a.reroot(a.start, a.start)


def star_inv(a: InverseAutomaton) -> InverseAutomaton:
    return a.reroot(a.end, a.end)
