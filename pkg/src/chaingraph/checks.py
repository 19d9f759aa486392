"""Randomized cross-checks: separation criteria agreement and random DAG pipelines.

All randomness flows from an explicit seed; results do not depend on ``jobs``.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import List, Tuple

from .consensus import DagSpec
from .enumeration import random_cg, random_chain, random_dag
from .formats import format_graph
from .graph import Chain, MixedGraph
from .separation import separated, separated_oracle

NODE_NAMES = [chr(ord("A") + i) for i in range(26)]


def random_query(nodes, rng: random.Random):
    """Disjoint non-empty x and y plus a possibly empty z."""
    nodes = sorted(nodes)
    while True:
        labels = [rng.randrange(4) for _ in nodes]
        x = frozenset(n for n, l in zip(nodes, labels) if l == 0)
        y = frozenset(n for n, l in zip(nodes, labels) if l == 1)
        z = frozenset(n for n, l in zip(nodes, labels) if l == 2)
        if x and y:
            return x, y, z


def _compare(batch):
    bad = []
    for g, x, y, z, sem in batch:
        a = separated(g, x, y, z, sem)
        b = separated_oracle(g, x, y, z, sem)
        if a != b:
            bad.append({"graph": format_graph(g), "x": sorted(x), "y": sorted(y), "z": sorted(z),
                        "semantics": sem, "route_search": a, "oracle": b})
    return bad


def random_agreement(n: int, queries: int, seed: int, semantics: str = "both",
                     queries_per_graph: int = 10, jobs: int = 1) -> Tuple[List[dict], int]:
    """Compare :func:`separated` with :func:`separated_oracle` on random queries.

    Returns the mismatches and the number of comparisons made.
    """
    rng = random.Random(seed)
    sems = ("lwf", "amp") if semantics == "both" else (semantics,)
    nodes = NODE_NAMES[:n]
    work = []
    while len(work) < queries:
        g = random_cg(nodes, rng, p_edge=rng.choice((0.25, 0.4, 0.6)))
        for _ in range(queries_per_graph):
            x, y, z = random_query(nodes, rng)
            for sem in sems:
                work.append((g, x, y, z, sem))
    work = work[:max(queries, 0)]
    if jobs > 1:
        size = -(-len(work) // (jobs * 4))
        batches = [work[i:i + size] for i in range(0, len(work), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            bad = [m for part in pool.map(_compare, batches) for m in part]
    else:
        bad = _compare(work)
    return bad, len(work)


def random_pipeline(rng: random.Random, max_nodes: int = 5, max_dags: int = 3,
                    max_hidden: int = 2) -> Tuple[List[DagSpec], Chain]:
    """Random DagSpecs over a shared observed set plus a random chain for it."""
    n = rng.randint(2, max_nodes)
    observed = NODE_NAMES[:n]
    specs = []
    for i in range(rng.randint(1, max_dags)):
        latent = [f"L{i}_{k}" for k in range(rng.randint(0, max_hidden))]
        selection = [f"S{i}_{k}" for k in range(rng.randint(0, max_hidden))]
        g = random_dag(observed + latent + selection, rng, p_edge=rng.choice((0.3, 0.5)))
        specs.append(DagSpec(MixedGraph(tuple(sorted(g.nodes)), g.directed), latent, selection))
    return specs, random_chain(observed, rng)
