"""Mixed graphs with directed and undirected edges, and the basic queries on them.

Graphs are immutable values. Node names are plain strings; every collection
returned from here is sorted lexicographically so that output is stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Tuple

from .errors import InvalidGraphError, UnknownNodeError

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")

RELATIONS = ("pa", "ch", "ne", "bd", "ad", "de", "san", "co")

Edge = Tuple[str, str]


def nodeset(value) -> FrozenSet[str]:
    """Coerce a node name or an iterable of names to a frozenset."""
    if value is None:
        return frozenset()
    if isinstance(value, str):
        return frozenset([value])
    return frozenset(value)


def _pair(u: str, v: str) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class MixedGraph:
    """Simple graph over named nodes whose edges are directed or undirected.

    ``directed`` holds ``(tail, head)`` pairs, ``undirected`` holds pairs with
    the smaller name first. Node order is the declaration order and is only
    used for serialization; equality ignores it.
    """

    nodes: Tuple[str, ...]
    directed: FrozenSet[Edge] = field(default_factory=frozenset)
    undirected: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise InvalidGraphError("duplicate node names")
        for n in nodes:
            if not isinstance(n, str) or not NAME_RE.match(n):
                raise InvalidGraphError(f"invalid node name {n!r}")
        directed = frozenset(tuple(e) for e in self.directed)
        undirected = frozenset(_pair(*e) for e in self.undirected)
        known = set(nodes)
        seen = set()
        for u, v in list(directed) + list(undirected):
            missing = {u, v} - known
            if missing:
                raise UnknownNodeError(missing)
            if u == v:
                raise InvalidGraphError(f"self-loop at {u}")
            p = _pair(u, v)
            if p in seen:
                raise InvalidGraphError(f"more than one edge between {p[0]} and {p[1]}")
            seen.add(p)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)

    @classmethod
    def from_edges(cls, nodes: Iterable[str], directed=(), undirected=()) -> "MixedGraph":
        return cls(tuple(nodes), frozenset(directed), frozenset(undirected))

    # -- identity -------------------------------------------------------

    @cached_property
    def node_set(self) -> FrozenSet[str]:
        return frozenset(self.nodes)

    def _key(self):
        return (self.node_set, self.directed, self.undirected)

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        parts = [f"{u}->{v}" for u, v in sorted(self.directed)]
        parts += [f"{u}--{v}" for u, v in sorted(self.undirected)]
        return f"MixedGraph({' '.join(sorted(self.nodes))}; {', '.join(parts)})"

    def canonical(self) -> str:
        """Order-independent serialization, usable as a dictionary key or for diffs."""
        parts = [f"{u}->{v}" for u, v in sorted(self.directed)]
        parts += [f"{u}--{v}" for u, v in sorted(self.undirected)]
        return " ".join(sorted(self.nodes)) + " | " + " ".join(parts)

    # -- adjacency ------------------------------------------------------

    @cached_property
    def _adj(self):
        pa = {n: set() for n in self.nodes}
        ch = {n: set() for n in self.nodes}
        ne = {n: set() for n in self.nodes}
        for u, v in self.directed:
            pa[v].add(u)
            ch[u].add(v)
        for u, v in self.undirected:
            ne[u].add(v)
            ne[v].add(u)
        freeze = lambda d: {k: frozenset(s) for k, s in d.items()}
        return freeze(pa), freeze(ch), freeze(ne)

    def parents(self, n: str) -> FrozenSet[str]:
        return self._adj[0][n]

    def children(self, n: str) -> FrozenSet[str]:
        return self._adj[1][n]

    def neighbors(self, n: str) -> FrozenSet[str]:
        return self._adj[2][n]

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adj[0][u] or v in self._adj[1][u] or v in self._adj[2][u]

    def edge_between(self, u: str, v: str) -> Optional[str]:
        """``'->'`` for u->v, ``'<-'`` for v->u, ``'--'`` for u--v, else None."""
        if v in self._adj[1][u]:
            return "->"
        if v in self._adj[0][u]:
            return "<-"
        if v in self._adj[2][u]:
            return "--"
        return None

    @cached_property
    def skeleton(self) -> FrozenSet[Edge]:
        return frozenset(_pair(u, v) for u, v in self.directed) | self.undirected

    @property
    def is_dag(self) -> bool:
        return not self.undirected and self.is_cg

    @property
    def is_ug(self) -> bool:
        return not self.directed

    @cached_property
    def is_cg(self) -> bool:
        return not semidirected_cycles(self, first_only=True)

    def require_cg(self):
        if not self.is_cg:
            cyc = semidirected_cycles(self, first_only=True)[0]
            raise InvalidGraphError("not a chain graph: semidirected cycle " + ",".join(cyc))

    def check_nodes(self, nodes: Iterable[str]):
        missing = set(nodes) - self.node_set
        if missing:
            raise UnknownNodeError(missing)

    # -- derived graphs -------------------------------------------------

    def with_edges(self, directed=None, undirected=None) -> "MixedGraph":
        return MixedGraph(
            self.nodes,
            self.directed if directed is None else frozenset(directed),
            self.undirected if undirected is None else frozenset(undirected),
        )

    def without_edge(self, u: str, v: str) -> "MixedGraph":
        p = _pair(u, v)
        return MixedGraph(
            self.nodes,
            frozenset(e for e in self.directed if _pair(*e) != p),
            frozenset(e for e in self.undirected if e != p),
        )

    def edges(self) -> List[Tuple[str, str, str]]:
        """All edges as ``(u, mark, v)`` with mark ``'->'`` or ``'--'``, sorted."""
        out = [(u, "->", v) for u, v in self.directed]
        out += [(u, "--", v) for u, v in self.undirected]
        return sorted(out)


@dataclass(frozen=True)
class Chain:
    """Ordered partition of a node set into blocks."""

    blocks: Tuple[FrozenSet[str], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        seen = set()
        for b in blocks:
            if not b:
                raise InvalidGraphError("empty block in chain")
            if seen & b:
                raise InvalidGraphError("blocks of a chain must be disjoint")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @property
    def nodes(self) -> FrozenSet[str]:
        return frozenset().union(*self.blocks)

    def index(self) -> dict:
        return {n: i for i, b in enumerate(self.blocks) for n in b}

    def before(self, i: int) -> FrozenSet[str]:
        """Union of the blocks strictly preceding block ``i``."""
        return frozenset().union(*self.blocks[:i])

    def __repr__(self):
        return "Chain(" + " | ".join(" ".join(sorted(b)) for b in self.blocks) + ")"


# -- structural queries -------------------------------------------------


def semidirected_cycles(g: MixedGraph, first_only: bool = False) -> List[Tuple[str, ...]]:
    """Witness semidirected cycles, one per directed edge that closes one.

    A cycle through ``u -> v`` exists iff ``u`` is reachable from ``v`` along
    edges that are directed forward or undirected.
    """
    cycles = []
    seen = set()
    for u, v in sorted(g.directed):
        prev = {v: None}
        stack = [v]
        while stack and u not in prev:
            a = stack.pop()
            for b in sorted(g.children(a) | g.neighbors(a)):
                if b not in prev:
                    prev[b] = a
                    stack.append(b)
        if u not in prev:
            continue
        path = [u]
        while path[-1] != v:
            path.append(prev[path[-1]])
        path.reverse()
        cyc = (u,) + tuple(path)  # u -> v ... u
        key = frozenset(cyc)
        if key in seen:
            continue
        seen.add(key)
        cycles.append(cyc)
        if first_only:
            break
    return cycles


def validate_cg(g: MixedGraph) -> List[Tuple[str, ...]]:
    """Return the list of witness semidirected cycles; empty means ``g`` is a CG."""
    return semidirected_cycles(g)


def _reach(start: Iterable[str], step) -> set:
    seen = set(start)
    stack = list(seen)
    while stack:
        a = stack.pop()
        for b in step(a):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return seen


def relatives(g: MixedGraph, x, relation: str) -> FrozenSet[str]:
    """Parents, children, neighbours, boundary, adjacents, descendants,
    strict ascendants or connectivity component of the node set ``x``.

    All but ``co`` exclude the members of ``x``; ``co`` takes a single node
    and returns its component, which contains the node itself.
    """
    x = nodeset(x)
    g.check_nodes(x)
    if relation == "co":
        if len(x) != 1:
            raise ValueError("relation 'co' takes exactly one node")
        return frozenset(_reach(x, g.neighbors))
    if relation == "pa":
        out = set().union(*(g.parents(n) for n in x))
    elif relation == "ch":
        out = set().union(*(g.children(n) for n in x))
    elif relation == "ne":
        out = set().union(*(g.neighbors(n) for n in x))
    elif relation == "bd":
        out = set().union(*(g.parents(n) | g.neighbors(n) for n in x))
    elif relation == "ad":
        out = set().union(*(g.parents(n) | g.neighbors(n) | g.children(n) for n in x))
    elif relation == "de":
        out = _reach(x, lambda a: g.children(a) | g.neighbors(a))
    elif relation == "san":
        out = _reach(x, g.parents)
    else:
        raise ValueError(f"unknown relation {relation!r}; expected one of {', '.join(RELATIONS)}")
    return frozenset(out - x)


def connectivity_components(g: MixedGraph) -> List[FrozenSet[str]]:
    comps = []
    left = set(g.nodes)
    for n in sorted(g.nodes):
        if n in left:
            comp = frozenset(_reach([n], g.neighbors))
            left -= comp
            comps.append(comp)
    return comps


def induced_subgraph(g: MixedGraph, x) -> MixedGraph:
    x = nodeset(x)
    g.check_nodes(x)
    return MixedGraph(
        tuple(n for n in g.nodes if n in x),
        frozenset(e for e in g.directed if e[0] in x and e[1] in x),
        frozenset(e for e in g.undirected if e[0] in x and e[1] in x),
    )


def chain_consistent(g: MixedGraph, alpha: Chain) -> bool:
    if alpha.nodes != g.node_set:
        raise InvalidGraphError("chain does not partition the graph's nodes")
    idx = alpha.index()
    return all(idx[u] < idx[v] for u, v in g.directed) and all(
        idx[u] == idx[v] for u, v in g.undirected
    )
