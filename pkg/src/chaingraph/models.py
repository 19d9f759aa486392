"""Independence models: membership, conditioning/marginalization, intersection,
explicit tables, axiom checks and inclusion tests.

A statement is ``X _|_ Y | Z`` over disjoint node sets. Graph-derived models
answer set-level queries directly; explicit models store elementary triples
``(u, v, Z)`` and answer set-level queries with the pairwise rule
(``X _|_ Y | Z`` iff every ``u in X``, ``v in Y`` gives a stored triple).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import CapExceededError, GraphFormatError, InvalidGraphError, UnknownNodeError
from .graph import MixedGraph, nodeset
from .separation import DEFAULT_MODEL_CAP, separated, subsets

AXIOMS = ("symmetry", "decomposition", "weak-union", "contraction", "intersection", "composition")
GRAPHOID = AXIOMS[:5]
COMPOSITIONAL = AXIOMS
AXIOM_CAP = 6


@dataclass(frozen=True)
class Triple:
    """The statement ``x _|_ y | z``; ``x`` and ``y`` are stored in sorted order."""

    x: FrozenSet[str]
    y: FrozenSet[str]
    z: FrozenSet[str] = frozenset()

    def __post_init__(self):
        x, y, z = nodeset(self.x), nodeset(self.y), nodeset(self.z)
        if x & y or x & z or y & z:
            raise ValueError("x, y and z must be pairwise disjoint")
        if sorted(y) < sorted(x):
            x, y = y, x
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    @property
    def nodes(self):
        return self.x | self.y | self.z

    def __str__(self):
        fmt = lambda s: "{" + ",".join(sorted(s)) + "}"
        return f"{fmt(self.x)} _|_ {fmt(self.y)} | {fmt(self.z)}"


class ModelView:
    """Queryable independence model over ``ground``.

    Subclasses implement :meth:`holds` for disjoint, non-empty ``x`` and
    ``y``; the empty-set convention and ground checks live in :meth:`member`.
    """

    ground: FrozenSet[str]

    def holds(self, x, y, z) -> bool:
        raise NotImplementedError

    def member(self, x, y, z=()) -> bool:
        x, y, z = nodeset(x), nodeset(y), nodeset(z)
        missing = (x | y | z) - self.ground
        if missing:
            raise UnknownNodeError(missing)
        if x & y or x & z or y & z:
            raise ValueError("x, y and z must be pairwise disjoint")
        if not x or not y:
            return True
        return self.holds(x, y, z)

    def __contains__(self, t: Triple) -> bool:
        return self.member(t.x, t.y, t.z)


class GraphBacked(ModelView):
    """I(graph) under one of the separation semantics; queries are memoized."""

    def __init__(self, graph: MixedGraph, semantics: str):
        graph.require_cg()
        self.graph = graph
        self.semantics = semantics
        self.ground = graph.node_set
        self._memo: Dict[tuple, bool] = {}

    def holds(self, x, y, z):
        key = (x, y, z)
        if key not in self._memo:
            self._memo[key] = separated(self.graph, x, y, z, self.semantics)
        return self._memo[key]

    def __repr__(self):
        return f"GraphBacked({self.graph!r}, {self.semantics!r})"


class Transformed(ModelView):
    """``inner`` with ``latent`` marginalized out and ``selection`` conditioned on."""

    def __init__(self, inner: ModelView, latent=(), selection=()):
        self.inner = inner
        self.latent = nodeset(latent)
        self.selection = nodeset(selection)
        if self.latent & self.selection:
            raise ValueError("latent and selection sets must be disjoint")
        missing = (self.latent | self.selection) - inner.ground
        if missing:
            raise UnknownNodeError(missing)
        self.ground = inner.ground - self.latent - self.selection

    def holds(self, x, y, z):
        return self.inner.holds(x, y, z | self.selection)

    def __repr__(self):
        return f"Transformed({self.inner!r}, L={sorted(self.latent)}, S={sorted(self.selection)})"


class Intersection(ModelView):
    def __init__(self, members: Iterable[ModelView]):
        self.members = tuple(members)
        if not self.members:
            raise ValueError("intersection of no models")
        grounds = {m.ground for m in self.members}
        if len(grounds) != 1:
            raise InvalidGraphError("intersected models must share a ground set")
        self.ground = grounds.pop()

    def holds(self, x, y, z):
        return all(m.holds(x, y, z) for m in self.members)

    def __repr__(self):
        return f"Intersection({list(self.members)!r})"


ElementaryTriple = Tuple[str, str, FrozenSet[str]]


class ExplicitModel(ModelView):
    """Finite table of elementary triples.

    With ``symmetric=True`` (the default) each triple is canonicalized to
    ``u < v`` so storage is closed under swapping. ``symmetric=False`` keeps
    the given orientation, which is only useful for testing axiom checks.
    """

    def __init__(self, ground, elementary: Iterable = (), symmetric: bool = True):
        self.ground = nodeset(ground)
        self.symmetric = symmetric
        table = set()
        for u, v, z in elementary:
            z = nodeset(z)
            if u == v or u in z or v in z:
                raise ValueError(f"malformed elementary triple ({u}, {v}, {sorted(z)})")
            missing = ({u, v} | z) - self.ground
            if missing:
                raise UnknownNodeError(missing)
            if symmetric and v < u:
                u, v = v, u
            table.add((u, v, z))
        self.elementary: FrozenSet[ElementaryTriple] = frozenset(table)

    def has(self, u, v, z) -> bool:
        if self.symmetric and v < u:
            u, v = v, u
        return (u, v, z) in self.elementary

    def holds(self, x, y, z):
        return all(self.has(u, v, z) for u in x for v in y)

    def __eq__(self, other):
        if not isinstance(other, ExplicitModel):
            return NotImplemented
        return (self.ground, self.elementary, self.symmetric) == (
            other.ground, other.elementary, other.symmetric)

    def __hash__(self):
        return hash((self.ground, self.elementary))

    def __len__(self):
        return len(self.elementary)

    def __repr__(self):
        return f"ExplicitModel(ground={sorted(self.ground)}, {len(self.elementary)} triples)"

    def sorted_triples(self) -> List[Tuple[str, str, List[str]]]:
        return sorted((u, v, sorted(z)) for u, v, z in self.elementary)

    def to_json(self) -> dict:
        return {
            "ground": sorted(self.ground),
            "elementary": [[u, v, z] for u, v, z in self.sorted_triples()],
        }

    @classmethod
    def from_json(cls, data, symmetric: bool = True) -> "ExplicitModel":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"invalid JSON: {exc}") from None
        try:
            ground = data["ground"]
            rows = data["elementary"]
            triples = [(u, v, z) for u, v, z in rows]
        except (KeyError, TypeError, ValueError):
            raise GraphFormatError("model JSON needs 'ground' and 'elementary' [[u, v, [z...]], ...]") from None
        try:
            return cls(ground, triples, symmetric)
        except (ValueError, UnknownNodeError) as exc:
            raise GraphFormatError(str(exc)) from None


def member(m: ModelView, t: Triple) -> bool:
    return m.member(t.x, t.y, t.z)


def materialize(m: ModelView, cap: int = DEFAULT_MODEL_CAP) -> ExplicitModel:
    if isinstance(m, ExplicitModel) and m.symmetric:
        return m
    if len(m.ground) > cap:
        raise CapExceededError(f"ground set of {len(m.ground)} nodes exceeds the cap of {cap}")
    out = []
    for u, v in itertools.combinations(sorted(m.ground), 2):
        for z in subsets(m.ground - {u, v}):
            if m.holds(frozenset([u]), frozenset([v]), z):
                out.append((u, v, z))
    return ExplicitModel(m.ground, out)


def model_subset(a: ModelView, b: ModelView, cap: int = DEFAULT_MODEL_CAP) -> bool:
    """Every elementary triple of ``a`` is in ``b``.

    For models satisfying decomposition and composition (all graph-derived
    ones) this is the same as set-level inclusion.
    """
    if a.ground != b.ground:
        raise InvalidGraphError("models are over different ground sets")
    ea = materialize(a, cap)
    if isinstance(b, ExplicitModel) and b.symmetric:
        return ea.elementary <= b.elementary
    return all(b.holds(frozenset([u]), frozenset([v]), z) for u, v, z in ea.elementary)


@dataclass(frozen=True)
class Violation:
    axiom: str
    x: Tuple[str, ...]
    y: Tuple[str, ...]
    z: Tuple[str, ...]
    w: Tuple[str, ...] = ()

    def to_json(self):
        return {"axiom": self.axiom, "x": list(self.x), "y": list(self.y),
                "z": list(self.z), "w": list(self.w)}


def _resolve_axioms(which) -> Tuple[str, ...]:
    if which is None or which == "compositional":
        return COMPOSITIONAL
    if which == "graphoid":
        return GRAPHOID
    which = tuple(which)
    unknown = set(which) - set(AXIOMS)
    if unknown:
        raise ValueError(f"unknown axiom(s): {', '.join(sorted(unknown))}")
    return which


def check_axioms(e: ExplicitModel, which=None) -> List[Violation]:
    """Concrete instances of the requested axioms that ``e`` fails.

    Every assignment of the ground nodes to X, Y, Z, W or unused is tried,
    so the ground set is capped at six nodes.
    """
    which = _resolve_axioms(which)
    ground = sorted(e.ground)
    if len(ground) > AXIOM_CAP:
        raise CapExceededError(f"axiom checks are limited to {AXIOM_CAP} nodes")

    def h(x, y, z):
        if not x or not y:
            return True
        return e.holds(x, y, z)

    out = []
    for labels in itertools.product(range(5), repeat=len(ground)):
        parts = [[], [], [], [], []]
        for n, l in zip(ground, labels):
            parts[l].append(n)
        X, Y, Z, W = (frozenset(p) for p in parts[:4])
        if not X or not (Y or W):
            continue
        YW = Y | W

        def bad(axiom):
            out.append(Violation(axiom, tuple(parts[0]), tuple(parts[1]), tuple(parts[2]), tuple(parts[3])))

        if "symmetry" in which and not W and h(X, Y, Z) and not h(Y, X, Z):
            bad("symmetry")
        if "decomposition" in which and h(X, YW, Z) and not h(X, Y, Z):
            bad("decomposition")
        if "weak-union" in which and h(X, YW, Z) and not h(X, Y, Z | W):
            bad("weak-union")
        if "contraction" in which and h(X, Y, Z | W) and h(X, W, Z) and not h(X, YW, Z):
            bad("contraction")
        if "intersection" in which and h(X, Y, Z | W) and h(X, W, Z | Y) and not h(X, YW, Z):
            bad("intersection")
        if "composition" in which and h(X, Y, Z) and h(X, W, Z) and not h(X, YW, Z):
            bad("composition")
    return out
