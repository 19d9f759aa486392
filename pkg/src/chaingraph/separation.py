"""Separation in chain graphs under the LWF, AMP, DAG and UG readings.

:func:`separated` decides ``X _|_ Y | Z`` by searching for a Z-open route.
Routes may revisit nodes, so the search runs over a finite set of walk
states (node plus the little bit of history that decides whether the next
step keeps the route open):

* AMP: the mark at the current node of the edge used to arrive. Whether a
  node occurrence is a triplex node depends only on the marks of the two
  edges around it, so every step is decided locally.
* LWF: whether the current section was entered through an arrowhead and
  whether it already contains a node of Z. A section is judged when the
  route leaves it through a directed edge or ends.

:func:`separated_oracle` answers the same question a different way, by
undirected separation in a moral graph (LWF) or an augmented graph (AMP).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple

from .errors import CapExceededError, InvalidGraphError
from .graph import MixedGraph, nodeset

SEMANTICS = ("lwf", "amp", "dag", "ug")
DEFAULT_MODEL_CAP = 7

HEAD, TAIL, LINE = "head", "tail", "line"


@dataclass(frozen=True)
class SeparationQuery:
    x: FrozenSet[str]
    y: FrozenSet[str]
    z: FrozenSet[str] = frozenset()
    semantics: str = "lwf"

    def __post_init__(self):
        x, y, z = nodeset(self.x), nodeset(self.y), nodeset(self.z)
        if x & y or x & z or y & z:
            raise ValueError("x, y and z must be pairwise disjoint")
        if self.semantics not in SEMANTICS:
            raise ValueError(f"unknown semantics {self.semantics!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class WalkState:
    """Node reached by a partial route plus the history the next step needs.

    ``entry`` is the mark at ``node`` of the edge used to arrive (None at the
    start). For LWF, ``into_section`` and ``section_hits_z`` describe the
    section containing ``node``.
    """

    node: str
    entry: str = None
    into_section: bool = False
    section_hits_z: bool = False


def _prepare(g: MixedGraph, x, y, z, semantics):
    q = SeparationQuery(x, y, z, semantics)
    g.check_nodes(q.x | q.y | q.z)
    g.require_cg()
    if semantics == "dag" and g.undirected:
        raise InvalidGraphError("semantics 'dag' requires a graph without undirected edges")
    if semantics == "ug" and g.directed:
        raise InvalidGraphError("semantics 'ug' requires a graph without directed edges")
    return q


def _steps(g: MixedGraph, b: str):
    """(next node, mark at b, mark at next) for every edge at b."""
    for c in g.children(b):
        yield c, TAIL, HEAD
    for c in g.parents(b):
        yield c, HEAD, TAIL
    for c in g.neighbors(b):
        yield c, LINE, LINE


def _amp_open_route(g, xs, ys, zs) -> bool:
    start = [WalkState(n) for n in xs]
    seen = set(start)
    stack = list(start)
    while stack:
        s = stack.pop()
        if s.node in ys:
            return True
        for c, out_mark, in_mark in _steps(g, s.node):
            if s.entry is not None:
                marks = (s.entry, out_mark)
                triplex = HEAD in marks and TAIL not in marks
                if triplex != (s.node in zs):
                    continue
            nxt = WalkState(c, in_mark)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def _lwf_open_route(g, xs, ys, zs) -> bool:
    start = [WalkState(n) for n in xs]
    seen = set(start)
    stack = list(start)
    while stack:
        s = stack.pop()
        # the route may end here; the final section is never a collider
        if s.node in ys and not s.section_hits_z:
            return True
        for c, out_mark, in_mark in _steps(g, s.node):
            if out_mark == LINE:
                hits = s.section_hits_z or c in zs
                if hits and not s.into_section:
                    continue  # non-collider section with a node in Z
                nxt = WalkState(c, LINE, s.into_section, hits)
            else:
                # leaving the section: a collider iff arrowheads at both ends
                collider = s.into_section and out_mark == HEAD
                if collider != s.section_hits_z:
                    continue
                if in_mark == TAIL and c in zs:
                    continue  # new section starts with a tail and already hits Z
                nxt = WalkState(c, in_mark, in_mark == HEAD, c in zs)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def separated(g: MixedGraph, x, y, z=(), semantics: str = "lwf") -> bool:
    """True iff no Z-open route joins a node of ``x`` to a node of ``y``.

    ``semantics`` is one of ``'lwf'``, ``'amp'``, ``'dag'`` or ``'ug'``; the
    last two use the LWF search and only check the graph class.
    """
    q = _prepare(g, x, y, z, semantics)
    if not q.x or not q.y:
        return True
    if q.semantics == "amp":
        return not _amp_open_route(g, q.x, q.y, q.z)
    return not _lwf_open_route(g, q.x, q.y, q.z)


# -- independent criteria ------------------------------------------------


def _undirected_separated(adj, xs, ys, zs) -> bool:
    seen = set(xs)
    stack = list(xs)
    while stack:
        a = stack.pop()
        if a in ys:
            return False
        for b in adj[a]:
            if b not in seen and b not in zs:
                seen.add(b)
                stack.append(b)
    return True


def _closure(start, step):
    seen = set(start)
    stack = list(seen)
    while stack:
        a = stack.pop()
        for b in step(a):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def moral_graph(g: MixedGraph, keep: Iterable[str]):
    """Adjacency of the moral graph of the anterior closure of ``keep``."""
    anterior = _closure(keep, lambda a: g.parents(a) | g.neighbors(a))
    adj = {n: set() for n in anterior}
    for u, v in list(g.directed) + list(g.undirected):
        if u in anterior and v in anterior:
            adj[u].add(v)
            adj[v].add(u)
    done = set()
    for n in anterior:
        if n in done:
            continue
        comp = _closure([n], g.neighbors)  # anterior sets are closed under neighbours
        done |= comp
        parents = set().union(*(g.parents(m) for m in comp)) - comp
        for u, v in itertools.combinations(parents, 2):
            adj[u].add(v)
            adj[v].add(u)
    return adj


def augmented_graph(g: MixedGraph, keep: Iterable[str]):
    """Adjacency of the augmented extended subgraph for the AMP criterion.

    Take the smallest parent-closed set containing ``keep``; inside it, join
    two nodes of one connectivity component when they are linked by an
    undirected path through removed nodes of that component; then join the
    end points of every triplex and of every bi-flag ``a -> b -- c <- d``,
    and forget edge directions.
    """
    keep = _closure(keep, g.parents)
    directed = {e for e in g.directed if e[0] in keep and e[1] in keep}
    undirected = {e for e in g.undirected if e[0] in keep and e[1] in keep}
    for a in keep:
        reached = _closure([a], lambda m: g.neighbors(m) if (m == a or m not in keep) else ())
        for b in reached:
            if b in keep and b != a:
                undirected.add((a, b) if a < b else (b, a))
    ext = MixedGraph(tuple(sorted(keep)), frozenset(directed), frozenset(undirected))
    adj = {n: set(ext.parents(n) | ext.children(n) | ext.neighbors(n)) for n in keep}
    for b in keep:
        inward = ext.parents(b) | ext.neighbors(b)
        for a, c in itertools.combinations(sorted(inward), 2):
            if ext.adjacent(a, c):
                continue
            if a in ext.parents(b) or c in ext.parents(b):
                adj[a].add(c)
                adj[c].add(a)
    for b, c in ext.undirected:
        for a in ext.parents(b):
            for d in ext.parents(c):
                if a != d:
                    adj[a].add(d)
                    adj[d].add(a)
    return adj


def separated_oracle(g: MixedGraph, x, y, z=(), semantics: str = "lwf") -> bool:
    """Same contract as :func:`separated`, decided by graph surgery.

    LWF (and DAG/UG): moralize the anterior closure of x, y and z. AMP: the
    augmentation criterion. Then test plain undirected separation by z.
    """
    q = _prepare(g, x, y, z, semantics)
    if not q.x or not q.y:
        return True
    keep = q.x | q.y | q.z
    if q.semantics == "amp":
        adj = augmented_graph(g, keep)
    else:
        adj = moral_graph(g, keep)
    return _undirected_separated(adj, q.x, q.y, q.z)


# -- elementary models ---------------------------------------------------

ElementaryTriple = Tuple[str, str, FrozenSet[str]]


def subsets(items) -> Iterable[FrozenSet[str]]:
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)


@lru_cache(maxsize=None)
def _elementary(g: MixedGraph, semantics: str) -> FrozenSet[ElementaryTriple]:
    out = set()
    for u, v in itertools.combinations(sorted(g.nodes), 2):
        for zs in subsets(g.node_set - {u, v}):
            if separated(g, u, v, zs, semantics):
                out.add((u, v, zs))
    return frozenset(out)


def elementary_triples(g: MixedGraph, semantics: str, cap: int = DEFAULT_MODEL_CAP):
    """All separated ``(u, v, Z)`` with ``u < v``, as a frozenset (memoized)."""
    if len(g.nodes) > cap:
        raise CapExceededError(f"{len(g.nodes)} nodes exceeds the model cap of {cap}")
    return _elementary(g, semantics)


def elementary_model(g: MixedGraph, semantics: str, cap: int = DEFAULT_MODEL_CAP):
    """I(g) as an :class:`~chaingraph.models.ExplicitModel`."""
    from .models import ExplicitModel

    return ExplicitModel(g.node_set, elementary_triples(g, semantics, cap))
