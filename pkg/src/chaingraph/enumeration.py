"""Exhaustive and random generation of chain graphs and chains."""

from __future__ import annotations

import itertools
import os
import random
from typing import Iterator, List, Optional, Sequence

from .errors import CapExceededError
from .graph import Chain, MixedGraph, chain_consistent

DEFAULT_ENUM_CAP = 4

# pair states, in enumeration order
ABSENT, FORWARD, BACKWARD, LINE = range(4)


def enum_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get("CG_ENUM_CAP", DEFAULT_ENUM_CAP))


def _check_cap(n: int, cap: Optional[int]):
    limit = enum_cap(cap)
    if n > limit:
        raise CapExceededError(f"{n} nodes exceeds the enumeration cap of {limit} (set CG_ENUM_CAP)")


def candidate_count(nodes) -> int:
    """Size of the raw pair-assignment index space for ``nodes``."""
    n = len(set(nodes))
    return 4 ** (n * (n - 1) // 2)


def graph_at(nodes: Sequence[str], index: int) -> MixedGraph:
    """Decode a pair-assignment index; pairs are taken in lexicographic order."""
    nodes = sorted(nodes)
    directed, undirected = [], []
    for u, v in itertools.combinations(nodes, 2):
        index, state = divmod(index, 4)
        if state == FORWARD:
            directed.append((u, v))
        elif state == BACKWARD:
            directed.append((v, u))
        elif state == LINE:
            undirected.append((u, v))
    return MixedGraph(tuple(nodes), frozenset(directed), frozenset(undirected))


def enumerate_cgs(nodes, cap: Optional[int] = None, start: int = 0,
                  stop: Optional[int] = None) -> Iterator[MixedGraph]:
    """Yield every chain graph over ``nodes`` exactly once.

    ``start``/``stop`` select a slice of the raw index space so callers can
    split the work; the concatenation of disjoint slices is the full stream.
    """
    nodes = sorted(set(nodes))
    _check_cap(len(nodes), cap)
    total = candidate_count(nodes)
    stop = total if stop is None else min(stop, total)
    for i in range(start, stop):
        g = graph_at(nodes, i)
        if g.is_cg:
            yield g


def same_skeleton_cgs(g: MixedGraph) -> Iterator[MixedGraph]:
    """Every chain graph with the same adjacencies as ``g`` (including ``g``)."""
    pairs = sorted(g.skeleton)
    for marks in itertools.product((FORWARD, BACKWARD, LINE), repeat=len(pairs)):
        directed, undirected = [], []
        for (u, v), m in zip(pairs, marks):
            if m == FORWARD:
                directed.append((u, v))
            elif m == BACKWARD:
                directed.append((v, u))
            else:
                undirected.append((u, v))
        h = MixedGraph(g.nodes, frozenset(directed), frozenset(undirected))
        if h.is_cg:
            yield h


def ordered_partitions(nodes) -> Iterator[Chain]:
    """All chains (ordered set partitions) over ``nodes``."""
    nodes = sorted(nodes)
    if not nodes:
        return

    def rec(rest):
        if not rest:
            yield ()
            return
        first, others = rest[0], rest[1:]
        # choose the block containing `first` first, then place it anywhere
        for k in range(len(others) + 1):
            for combo in itertools.combinations(others, k):
                block = frozenset((first,) + combo)
                remaining = [n for n in others if n not in block]
                for tail in rec(remaining):
                    for pos in range(len(tail) + 1):
                        yield tail[:pos] + (block,) + tail[pos:]

    for blocks in rec(nodes):
        yield Chain(blocks)


def consistent_chains(g: MixedGraph) -> List[Chain]:
    """Every chain consistent with ``g``, in a deterministic order."""
    _check_cap(len(g.nodes), None)
    return [a for a in ordered_partitions(g.nodes) if chain_consistent(g, a)]


def random_chain(nodes, rng: random.Random, max_blocks: Optional[int] = None) -> Chain:
    nodes = sorted(nodes)
    k = rng.randint(1, max_blocks or len(nodes))
    labels = [rng.randrange(k) for _ in nodes]
    blocks = [frozenset(n for n, l in zip(nodes, labels) if l == i) for i in range(k)]
    return Chain(tuple(b for b in blocks if b))


def random_cg(nodes, rng: random.Random, p_edge: float = 0.4,
              alpha: Optional[Chain] = None) -> MixedGraph:
    """Random CG consistent with ``alpha`` (a random chain if omitted).

    Every CG is consistent with some chain, so every CG has positive
    probability.
    """
    nodes = sorted(nodes)
    alpha = alpha or random_chain(nodes, rng)
    idx = alpha.index()
    directed, undirected = [], []
    for u, v in itertools.combinations(nodes, 2):
        if rng.random() >= p_edge:
            continue
        if idx[u] == idx[v]:
            undirected.append((u, v))
        elif idx[u] < idx[v]:
            directed.append((u, v))
        else:
            directed.append((v, u))
    return MixedGraph(tuple(nodes), frozenset(directed), frozenset(undirected))


def random_dag(nodes, rng: random.Random, p_edge: float = 0.4) -> MixedGraph:
    order = sorted(nodes)
    rng.shuffle(order)
    return random_cg(order, rng, p_edge, Chain(tuple(frozenset([n]) for n in order)))
