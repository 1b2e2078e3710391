"""Birooted inverse automata.

Only positive transitions are stored.  Reading a letter with sign -1
follows a positive transition backwards, so the involution closure of the
edge set can never get out of sync.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .terms import Barred, Label, Plain, Word, decode_label, encode_label, label_key

Edge = tuple[int, Label, int]


@dataclass(frozen=True, eq=False)
class InverseAutomaton:
    vertices: frozenset[int]
    edges: frozenset[Edge]
    start: int
    end: int

    def __post_init__(self):
        if self.start not in self.vertices or self.end not in self.vertices:
            raise ValueError("roots must be vertices")
        for s, _, t in self.edges:
            if s not in self.vertices or t not in self.vertices:
                raise ValueError(f"edge endpoint outside vertex set: {(s, t)}")

    @cached_property
    def out(self) -> dict[tuple[int, Label], int]:
        return {(s, a): t for s, a, t in self.edges}

    @cached_property
    def inn(self) -> dict[tuple[int, Label], int]:
        return {(t, a): s for s, a, t in self.edges}

    @cached_property
    def adjacency(self) -> dict[int, list[tuple[int, Label, int]]]:
        """Per vertex: ``(direction, label, neighbour)`` in canonical order."""
        adj: dict[int, list] = {v: [] for v in self.vertices}
        for s, a, t in self.edges:
            adj[s].append((1, a, t))
            adj[t].append((-1, a, s))
        for v in adj:
            adj[v].sort(key=lambda e: (-e[0], label_key(e[1])))
        return adj

    def is_deterministic(self) -> bool:
        """Deterministic and co-deterministic."""
        return len(self.out) == len(self.edges) == len(self.inn)

    def is_connected(self) -> bool:
        return len(_bfs_order(self)) == len(self.vertices)

    def step(self, v: int, label: Label, sign: int) -> Optional[int]:
        return self.out.get((v, label)) if sign > 0 else self.inn.get((v, label))

    def read(self, v: int, w: Word) -> Optional[int]:
        for a in w:
            v = self.step(v, a.base, a.sign)
            if v is None:
                return None
        return v

    def labels(self) -> set[Label]:
        return {a for _, a, _ in self.edges}

    def reroot(self, start: int, end: int) -> "InverseAutomaton":
        return InverseAutomaton(self.vertices, self.edges, start, end)

    def __repr__(self) -> str:
        return (
            f"InverseAutomaton(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
            f"start={self.start}, end={self.end})"
        )


def trivial() -> InverseAutomaton:
    return InverseAutomaton(frozenset({0}), frozenset(), 0, 0)


def linear_graph(w: Word) -> InverseAutomaton:
    edges = set()
    for i, a in enumerate(w):
        edges.add((i, a.base, i + 1) if a.sign > 0 else (i + 1, a.base, i))
    return InverseAutomaton(frozenset(range(len(w) + 1)), frozenset(edges), 0, len(w))


class Workspace:
    """Union-find over vertices with per-class transition maps.

    Adding an edge whose label clashes with an existing one queues the two
    targets for merging; :meth:`drain` performs the merges until the graph is
    deterministic and co-deterministic again.
    """

    def __init__(self, vertices: Iterable[int], trace: Optional[list] = None):
        self.parent = {v: v for v in vertices}
        self.size = {v: 1 for v in self.parent}
        self.out: dict[int, dict[Label, int]] = {v: {} for v in self.parent}
        self.inn: dict[int, dict[Label, int]] = {v: {} for v in self.parent}
        self.pending: deque[tuple[int, int]] = deque()
        self.trace = trace

    @classmethod
    def of(cls, a: InverseAutomaton, rng: Optional[random.Random] = None, trace=None) -> "Workspace":
        ws = cls(a.vertices, trace)
        edges = sorted(a.edges, key=lambda e: (e[0], label_key(e[1]), e[2]))
        if rng is not None:
            rng.shuffle(edges)
        for s, lab, t in edges:
            ws.add_edge(s, lab, t)
        return ws

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def add_vertices(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            self.parent[v] = v
            self.size[v] = 1
            self.out[v] = {}
            self.inn[v] = {}

    def has_edge(self, s: int, label: Label, t: int) -> bool:
        u = self.out[self.find(s)].get(label)
        return u is not None and self.find(u) == self.find(t)

    def target(self, s: int, label: Label) -> Optional[int]:
        u = self.out[self.find(s)].get(label)
        return None if u is None else self.find(u)

    def add_edge(self, s: int, label: Label, t: int) -> None:
        s, t = self.find(s), self.find(t)
        old = self.out[s].get(label)
        if old is None:
            self.out[s][label] = t
        elif self.find(old) != t:
            self.pending.append((old, t))
        old = self.inn[t].get(label)
        if old is None:
            self.inn[t][label] = s
        elif self.find(old) != s:
            self.pending.append((old, s))

    def merge(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        if self.trace is not None:
            self.trace.append(("FOLD", x, y))
        for maps in (self.out, self.inn):
            keep, gone = maps[x], maps.pop(y)
            for label, v in gone.items():
                w = keep.get(label)
                if w is None:
                    keep[label] = v
                elif self.find(w) != self.find(v):
                    self.pending.append((w, v))

    def drain(self) -> None:
        while self.pending:
            self.merge(*self.pending.popleft())

    def roots(self) -> list[int]:
        return [v for v in self.parent if self.parent[v] == v]

    def edges(self) -> Iterator[Edge]:
        for s, row in self.out.items():
            for label, t in row.items():
                yield s, label, self.find(t)

    def export(self, start: int, end: int) -> InverseAutomaton:
        self.drain()
        return InverseAutomaton(frozenset(self.roots()), frozenset(self.edges()), self.find(start), self.find(end))


def fold(a: InverseAutomaton, rng: Optional[random.Random] = None) -> InverseAutomaton:
    """Stallings folding; ``rng`` shuffles the order edges are inserted."""
    ws = Workspace.of(a, rng)
    return ws.export(a.start, a.end)


def relabel(a: InverseAutomaton, offset: int = 0) -> InverseAutomaton:
    """Renumber vertices as ``offset, offset+1, ...`` in canonical order."""
    order = _bfs_order(a)
    order += sorted(a.vertices - set(order))
    index = {v: offset + i for i, v in enumerate(order)}
    return InverseAutomaton(
        frozenset(index.values()),
        frozenset((index[s], lab, index[t]) for s, lab, t in a.edges),
        index[a.start],
        index[a.end],
    )


def glue(a: InverseAutomaton, b: InverseAutomaton) -> InverseAutomaton:
    """Identify ``end(a)`` with ``start(b)`` and fold."""
    a = relabel(a)
    b = relabel(b, offset=len(a.vertices))
    ws = Workspace(a.vertices | b.vertices)
    for s, lab, t in list(a.edges) + list(b.edges):
        ws.add_edge(s, lab, t)
    ws.merge(a.end, b.start)
    return relabel(ws.export(a.start, b.end))


def rooted_morphism(a: InverseAutomaton, b: InverseAutomaton) -> Optional[dict[int, int]]:
    """The label-preserving map from ``b`` into ``a`` matching both roots, if any."""
    image = {b.start: a.start}
    queue = deque([b.start])
    while queue:
        v = queue.popleft()
        for direction, label, w in b.adjacency[v]:
            target = a.step(image[v], label, direction)
            if target is None:
                return None
            seen = image.get(w)
            if seen is None:
                image[w] = target
                queue.append(w)
            elif seen != target:
                return None
    if len(image) != len(b.vertices) or image[b.end] != a.end:
        return None
    return image


def iso_check(a: InverseAutomaton, b: InverseAutomaton) -> bool:
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    image = rooted_morphism(a, b)
    return image is not None and len(set(image.values())) == len(a.vertices)


def accepts(a: InverseAutomaton, w: Word) -> bool:
    return a.read(a.start, w) == a.end


def _bfs_order(a: InverseAutomaton) -> list[int]:
    order = [a.start]
    seen = {a.start}
    i = 0
    while i < len(order):
        for _, _, w in a.adjacency[order[i]]:
            if w not in seen:
                seen.add(w)
                order.append(w)
        i += 1
    return order


def canonical_serialize(a: InverseAutomaton) -> bytes:
    """Header ``|V| start end`` then sorted ``source label target`` lines."""
    order = _bfs_order(a)
    if len(order) != len(a.vertices):
        raise ValueError("canonical form needs a connected automaton")
    index = {v: i for i, v in enumerate(order)}
    rows = sorted((index[s], encode_label(lab), index[t]) for s, lab, t in a.edges)
    lines = [f"{len(order)} {index[a.start]} {index[a.end]}"]
    lines += [f"{s} {lab} {t}" for s, lab, t in rows]
    return ("\n".join(lines) + "\n").encode()


def deserialize(data: bytes) -> InverseAutomaton:
    lines = data.decode().splitlines()
    n, start, end = map(int, lines[0].split())
    edges = set()
    for line in lines[1:]:
        s, lab, t = line.split()
        edges.add((int(s), decode_label(lab), int(t)))
    return InverseAutomaton(frozenset(range(n)), frozenset(edges), start, end)


def _dot_label(label: Label) -> str:
    return label.name if isinstance(label, Plain) else str(label)


def to_dot(a: InverseAutomaton, name: str = "G") -> str:
    """Plain edges solid, barred edges dashed; roots marked by stub arrows."""
    order = _bfs_order(a)
    order += sorted(a.vertices - set(order))
    index = {v: i for i, v in enumerate(order)}
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=point];"]
    lines.append('  start [shape=none, label=""];')
    lines.append('  end [shape=none, label=""];')
    for v in order:
        lines.append(f'  v{index[v]} [xlabel="{index[v]}"];')
    lines.append(f"  start -> v{index[a.start]};")
    lines.append(f"  v{index[a.end]} -> end;")
    rows = sorted((index[s], label_key(lab), lab, index[t]) for s, lab, t in a.edges)
    for s, _, lab, t in rows:
        style = "solid" if isinstance(lab, Plain) else "dashed"
        lines.append(f'  v{s} -> v{t} [label="{_dot_label(lab)}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Barred",
    "Edge",
    "InverseAutomaton",
    "Plain",
    "Workspace",
    "accepts",
    "canonical_serialize",
    "deserialize",
    "fold",
    "glue",
    "iso_check",
    "linear_graph",
    "relabel",
    "rooted_morphism",
    "to_dot",
    "trivial",
]
