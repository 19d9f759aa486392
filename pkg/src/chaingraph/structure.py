"""Complexes, triplexes and the Markov equivalence tests built on them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import InvalidGraphError
from .graph import MixedGraph, connectivity_components

ARROW_ARROW = "arrow-arrow"
ARROW_LINE = "arrow-line"
LINE_ARROW = "line-arrow"


@dataclass(frozen=True, order=True)
class Complex:
    """Induced ``left_parent -> s1 -- ... -- sk <- right_parent``, with
    ``left_parent < right_parent``."""

    left_parent: str
    section: Tuple[str, ...]
    right_parent: str

    def __str__(self):
        return f"{self.left_parent} -> {' -- '.join(self.section)} <- {self.right_parent}"


@dataclass(frozen=True, order=True)
class Triplex:
    """Induced ``a ? b ? c`` where ``shape`` gives the marks, read left to right,
    with ``a < c``."""

    a: str
    b: str
    c: str
    shape: str

    def __str__(self):
        left = "->" if self.shape in (ARROW_ARROW, ARROW_LINE) else "--"
        right = "<-" if self.shape in (ARROW_ARROW, LINE_ARROW) else "--"
        return f"{self.a} {left} {self.b} {right} {self.c}"


def _undirected_paths(g: MixedGraph, start: str, comp):
    """All simple undirected paths starting at ``start`` inside ``comp``."""
    stack = [(start,)]
    while stack:
        path = stack.pop()
        yield path
        for n in g.neighbors(path[-1]):
            if n in comp and n not in path:
                stack.append(path + (n,))


def _is_induced_line(g: MixedGraph, seq) -> bool:
    # consecutive members adjacent, no other pair adjacent
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if g.adjacent(seq[i], seq[j]) != (j == i + 1):
                return False
    return True


def complexes(g: MixedGraph) -> List[Complex]:
    g.require_cg()
    found = set()
    for comp in connectivity_components(g):
        for s in comp:
            if not g.parents(s):
                continue
            for path in _undirected_paths(g, s, comp):
                t = path[-1]
                for a in g.parents(s):
                    for c in g.parents(t):
                        if a == c:
                            continue
                        if not _is_induced_line(g, (a,) + path + (c,)):
                            continue
                        if a < c:
                            found.add(Complex(a, path, c))
                        else:
                            found.add(Complex(c, path[::-1], a))
    return sorted(found)


def _mark_at(g: MixedGraph, b: str, a: str) -> str:
    """Mark at ``b`` of the edge between ``a`` and ``b``."""
    if a in g.parents(b):
        return "head"
    if a in g.neighbors(b):
        return "line"
    return "tail"


def triplexes(g: MixedGraph) -> List[Triplex]:
    g.require_cg()
    found = set()
    for b in g.nodes:
        adj = sorted(g.parents(b) | g.neighbors(b))
        for i, a in enumerate(adj):
            for c in adj[i + 1:]:
                if g.adjacent(a, c):
                    continue
                ma, mc = _mark_at(g, b, a), _mark_at(g, b, c)
                if "head" not in (ma, mc):
                    continue
                if ma == mc:
                    shape = ARROW_ARROW
                elif ma == "head":
                    shape = ARROW_LINE
                else:
                    shape = LINE_ARROW
                found.add(Triplex(a, b, c, shape))
    return sorted(found)


def markov_equivalent(g: MixedGraph, h: MixedGraph, semantics: str) -> bool:
    """Same adjacencies plus same complexes (LWF) or same triplexes (AMP)."""
    if g.node_set != h.node_set:
        raise InvalidGraphError("graphs are over different node sets")
    if semantics not in ("lwf", "amp"):
        raise ValueError(f"semantics must be 'lwf' or 'amp', got {semantics!r}")
    if g.skeleton != h.skeleton:
        return False
    if semantics == "lwf":
        return complexes(g) == complexes(h)
    # a triplex is identified by its end points and middle node, not its shape
    key = lambda graph: {(t.a, t.b, t.c) for t in triplexes(graph)}
    return key(g) == key(h)
