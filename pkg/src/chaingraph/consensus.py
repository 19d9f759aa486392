"""Build the unique inclusion-minimal LWF or AMP chain graph consistent with a
chain from an independence model, and the pipeline that feeds it a set of
DAGs under marginalization and conditioning.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (ContractViolation, GraphFormatError, InvalidGraphError,
                     NonGraphoidError, UnsatisfiableTemplateError)
from .graph import Chain, MixedGraph, nodeset
from .models import GraphBacked, Intersection, ModelView, Transformed, Triple, model_subset
from .separation import DEFAULT_MODEL_CAP

MODES = ("shrink", "brute", "both")


@dataclass
class Query:
    triple: Triple
    holds: bool

    def to_json(self):
        return {"x": sorted(self.triple.x), "y": sorted(self.triple.y),
                "z": sorted(self.triple.z), "holds": self.holds}


@dataclass
class NodeRecord:
    node: str
    role: str
    block: int
    candidates: Tuple[str, ...]
    chosen: Tuple[str, ...] = ()
    queries: List[Query] = field(default_factory=list)

    def to_json(self):
        return {"node": self.node, "role": self.role, "block": self.block,
                "candidates": list(self.candidates), "chosen": list(self.chosen),
                "queries": [q.to_json() for q in self.queries]}


@dataclass
class ConsensusTrace:
    semantics: str
    blocks: List[List[str]]
    records: List[NodeRecord] = field(default_factory=list)

    def replay(self, m: ModelView) -> List[Query]:
        """Re-ask every recorded query; returns the ones whose answer changed."""
        return [q for r in self.records for q in r.queries if (q.triple in m) != q.holds]

    def to_json(self):
        return {"semantics": self.semantics, "blocks": self.blocks,
                "records": [r.to_json() for r in self.records]}


class _Asker:
    """Memoized membership queries, logged into the current node record."""

    def __init__(self, m: ModelView):
        self.m = m
        self.memo: Dict[Triple, bool] = {}
        self.record: Optional[NodeRecord] = None

    def __call__(self, t: Triple) -> bool:
        if t not in self.memo:
            self.memo[t] = t in self.m
        if self.record is not None:
            self.record.queries.append(Query(t, self.memo[t]))
        return self.memo[t]


def _shrink(ask, candidates, template, order_rng):
    chosen = set(candidates)
    if not ask(template(frozenset(chosen))):
        raise UnsatisfiableTemplateError(
            f"no subset of {sorted(candidates)} satisfies {template(frozenset(chosen))}")
    changed = True
    while changed:
        changed = False
        order = sorted(chosen)
        if order_rng is not None:
            order_rng.shuffle(order)
        for y in order:
            trial = frozenset(chosen - {y})
            if ask(template(trial)):
                chosen.discard(y)
                changed = True
                break
    return frozenset(chosen)


def _brute(ask, candidates, template):
    items = sorted(candidates)
    for k in range(len(items) + 1):
        hits = [frozenset(c) for c in itertools.combinations(items, k)
                if ask(template(frozenset(c)))]
        if len(hits) > 1:
            raise NonGraphoidError(
                f"two smallest sets {sorted(hits[0])} and {sorted(hits[1])}; "
                "the model violates the intersection property")
        if hits:
            return hits[0]
    raise UnsatisfiableTemplateError(f"no subset of {items} satisfies the separation")


def find_smallest_subset(m, x: str, candidates, template: Callable[[FrozenSet[str]], Triple],
                         mode: str = "shrink", rng: Optional[random.Random] = None) -> FrozenSet[str]:
    """Smallest ``B`` within ``candidates`` with ``template(B)`` in ``m``.

    ``mode='shrink'`` starts from all candidates and drops elements while
    the separation survives; ``rng`` randomizes the drop order. ``'brute'``
    tries subsets by increasing size. ``'both'`` runs the two and insists
    they agree. ``m`` may be a model or a memoizing query callable.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    ask = m if callable(m) and not isinstance(m, ModelView) else _Asker(m)
    candidates = nodeset(candidates) - {x}
    if mode == "shrink":
        return _shrink(ask, candidates, template, rng)
    if mode == "brute":
        return _brute(ask, candidates, template)
    a = _shrink(ask, candidates, template, rng)
    b = _brute(ask, candidates, template)
    if a != b:
        raise NonGraphoidError(
            f"greedy shrink found {sorted(a)} but the smallest set is {sorted(b)} for {x}")
    return a


def _check_chain(m: ModelView, alpha: Chain):
    if alpha.nodes != m.ground:
        raise InvalidGraphError("chain does not partition the model's ground set")


def _assert_symmetric(found: Dict[str, FrozenSet[str]], block, what: str):
    for x in sorted(block):
        for y in sorted(found[x] & block):
            if x not in found[y]:
                raise NonGraphoidError(
                    f"{y} is in the {what} of {x} but not vice versa; the model is not a graphoid")


def lwf_consensus(m: ModelView, alpha: Chain, mode: str = "shrink",
                  rng: Optional[random.Random] = None) -> Tuple[MixedGraph, ConsensusTrace]:
    """Each node's boundary is the smallest set, among the nodes of its block
    and earlier blocks, that separates it from the rest of those nodes."""
    _check_chain(m, alpha)
    ask = _Asker(m)
    trace = ConsensusTrace("lwf", [sorted(b) for b in alpha.blocks])
    directed, undirected = set(), set()
    for i, block in enumerate(alpha.blocks):
        upto = alpha.before(i) | block
        bd = {}
        for x in sorted(block):
            context = upto - {x}
            rec = NodeRecord(x, "bd", i, tuple(sorted(context)))
            ask.record = rec
            bd[x] = find_smallest_subset(
                ask, x, context, lambda b, x=x, c=context: Triple({x}, c - b, b), mode, rng)
            rec.chosen = tuple(sorted(bd[x]))
            trace.records.append(rec)
        ask.record = None
        _assert_symmetric(bd, block, "boundary")
        for x in block:
            for y in bd[x]:
                if y in block:
                    undirected.add((min(x, y), max(x, y)))
                else:
                    directed.add((y, x))
    g = MixedGraph(tuple(sorted(m.ground)), frozenset(directed), frozenset(undirected))
    return g, trace


def _descendants(x, children, neighbors):
    seen = {x}
    stack = [x]
    while stack:
        a = stack.pop()
        for b in children.get(a, ()) | neighbors.get(a, set()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return frozenset(seen - {x})


def amp_consensus(m: ModelView, alpha: Chain, mode: str = "shrink",
                  rng: Optional[random.Random] = None) -> Tuple[MixedGraph, ConsensusTrace]:
    """Blocks are handled last to first: neighbours within the block, then
    parents among earlier blocks given the descendants found so far."""
    _check_chain(m, alpha)
    ask = _Asker(m)
    trace = ConsensusTrace("amp", [sorted(b) for b in alpha.blocks])
    ground = m.ground
    children: Dict[str, set] = {n: set() for n in ground}
    neighbors: Dict[str, set] = {n: set() for n in ground}
    directed, undirected = set(), set()
    for i in reversed(range(len(alpha.blocks))):
        block = alpha.blocks[i]
        pre = alpha.before(i)
        ne = {}
        for x in sorted(block):
            rec = NodeRecord(x, "ne", i, tuple(sorted(block - {x})))
            ask.record = rec
            ne[x] = find_smallest_subset(
                ask, x, block - {x},
                lambda b, x=x: Triple({x}, block - {x} - b, pre | b), mode, rng)
            rec.chosen = tuple(sorted(ne[x]))
            trace.records.append(rec)
        ask.record = None
        _assert_symmetric(ne, block, "neighbourhood")
        for x in block:
            for y in ne[x]:
                neighbors[x].add(y)
                neighbors[y].add(x)
                undirected.add((min(x, y), max(x, y)))
        # descendants are fixed once this block's lines are in place
        de = {x: _descendants(x, children, neighbors) for x in block}
        for x in sorted(block):
            rest = ground - {x} - de[x]
            rec = NodeRecord(x, "pa", i, tuple(sorted(pre)))
            ask.record = rec
            pa = find_smallest_subset(
                ask, x, pre, lambda b, x=x, r=rest: Triple({x}, r - b, b), mode, rng)
            rec.chosen = tuple(sorted(pa))
            trace.records.append(rec)
            for p in pa:
                children[p].add(x)
                directed.add((p, x))
        ask.record = None
    trace.records.sort(key=lambda r: (r.block, r.role != "ne", r.node))
    g = MixedGraph(tuple(sorted(ground)), frozenset(directed), frozenset(undirected))
    return g, trace


def consensus(m: ModelView, alpha: Chain, semantics: str, **kw):
    if semantics == "lwf":
        return lwf_consensus(m, alpha, **kw)
    if semantics == "amp":
        return amp_consensus(m, alpha, **kw)
    raise ValueError("semantics must be 'lwf' or 'amp'")


def removable_edges(g: MixedGraph, m: ModelView, semantics: str,
                    cap: int = DEFAULT_MODEL_CAP) -> List[Tuple[str, str, str]]:
    """Edges of ``g`` whose deletion leaves a graph that still includes ``m``.

    Empty for an inclusion-minimal ``g``.
    """
    out = []
    for u, mark, v in g.edges():
        if model_subset(GraphBacked(g.without_edge(u, v), semantics), m, cap):
            out.append((u, mark, v))
    return out


# -- multi-DAG pipeline --------------------------------------------------


@dataclass(frozen=True)
class DagSpec:
    """A DAG over V plus latent nodes L and selection nodes S."""

    graph: MixedGraph
    latent: FrozenSet[str] = frozenset()
    selection: FrozenSet[str] = frozenset()

    def __post_init__(self):
        latent, selection = nodeset(self.latent), nodeset(self.selection)
        object.__setattr__(self, "latent", latent)
        object.__setattr__(self, "selection", selection)
        if self.graph.undirected or not self.graph.is_cg:
            raise InvalidGraphError("a DagSpec graph must be a DAG")
        if latent & selection:
            raise InvalidGraphError("latent and selection sets overlap")
        self.graph.check_nodes(latent | selection)

    @property
    def observed(self) -> FrozenSet[str]:
        return self.graph.node_set - self.latent - self.selection

    def model(self) -> ModelView:
        return Transformed(GraphBacked(self.graph, "dag"), self.latent, self.selection)

    def to_json(self) -> dict:
        return {"nodes": list(self.graph.nodes), "edges": [list(e) for e in sorted(self.graph.directed)],
                "latent": sorted(self.latent), "selection": sorted(self.selection)}

    @classmethod
    def from_json(cls, data) -> "DagSpec":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"invalid JSON: {exc}") from None
        try:
            nodes = list(data["nodes"])
            edges = [tuple(e) for e in data.get("edges", [])]
            if any(len(e) != 2 for e in edges):
                raise ValueError
            latent, selection = data.get("latent", []), data.get("selection", [])
        except (KeyError, TypeError, ValueError):
            raise GraphFormatError('DagSpec JSON needs "nodes", "edges" [[tail, head], ...], '
                                   '"latent" and "selection"') from None
        try:
            return cls(MixedGraph(tuple(nodes), frozenset(edges)), latent, selection)
        except (InvalidGraphError, KeyError) as exc:
            raise GraphFormatError(str(exc)) from None


def combined_model(specs: Sequence[DagSpec]) -> ModelView:
    if not specs:
        raise ValueError("at least one DagSpec is required")
    grounds = {s.observed for s in specs}
    if len(grounds) != 1:
        raise InvalidGraphError("all DagSpecs must share the same observed node set")
    return Intersection([s.model() for s in specs])


def consensus_from_dags(specs: Sequence[DagSpec], alpha: Chain, semantics: str,
                        verify: bool = True, mode: str = "shrink",
                        cap: int = DEFAULT_MODEL_CAP) -> Tuple[MixedGraph, ConsensusTrace]:
    """Combine the DAG models and build the consensus CG for ``alpha``.

    With ``verify`` (and a ground set within ``cap``) the result is checked to
    include the combined model and to lose inclusion when any edge is removed.
    """
    m = combined_model(specs)
    g, trace = consensus(m, alpha, semantics, mode=mode)
    if verify and len(m.ground) <= cap:
        if not model_subset(GraphBacked(g, semantics), m, cap):
            raise ContractViolation("consensus graph does not include the combined model", g)
        extra = removable_edges(g, m, semantics, cap)
        if extra:
            raise ContractViolation(f"consensus graph is not inclusion minimal; removable: {extra}", g)
    return g, trace
