import pytest

from chaingraph.errors import InvalidGraphError
from chaingraph.graph import MixedGraph
from chaingraph.structure import (ARROW_ARROW, ARROW_LINE, LINE_ARROW, Complex, Triplex,
                                  complexes, markov_equivalent, triplexes)


def G(nodes, directed=(), undirected=()):
    return MixedGraph.from_edges(nodes, directed, undirected)


def brute_complexes(g):
    """Scan every ordered node sequence for the induced pattern a -> s.. <- c."""
    import itertools

    out = set()
    nodes = sorted(g.nodes)
    for k in range(3, len(nodes) + 1):
        for seq in itertools.permutations(nodes, k):
            a, *sec, c = seq
            if not (g.edge_between(a, sec[0]) == "->" and g.edge_between(c, sec[-1]) == "->"):
                continue
            if not all(g.edge_between(p, q) == "--" for p, q in zip(sec, sec[1:])):
                continue
            if any(g.adjacent(seq[i], seq[j]) for i in range(k) for j in range(i + 2, k)):
                continue
            out.add(Complex(a, tuple(sec), c) if a < c else Complex(c, tuple(sec[::-1]), a))
    return sorted(out)


def brute_triplexes(g):
    import itertools

    out = set()
    for a, b, c in itertools.permutations(sorted(g.nodes), 3):
        if a > c or g.adjacent(a, c):
            continue
        left, right = g.edge_between(a, b), g.edge_between(b, c)
        if (left, right) == ("->", "<-"):
            out.add(Triplex(a, b, c, ARROW_ARROW))
        elif (left, right) == ("->", "--"):
            out.add(Triplex(a, b, c, ARROW_LINE))
        elif (left, right) == ("--", "<-"):
            out.add(Triplex(a, b, c, LINE_ARROW))
    return sorted(out)


def test_example_graph_complex(example_graph):
    assert complexes(example_graph) == [Complex("A", ("B", "C"), "D")]


def test_minimal_complex_and_none():
    assert complexes(G("ABC", [("A", "B"), ("C", "B")])) == [Complex("A", ("B",), "C")]
    assert complexes(G("ABC", [("A", "B"), ("B", "C")])) == []


def test_shielded_collider_is_not_a_complex():
    assert complexes(G("ABC", [("A", "B"), ("C", "B"), ("A", "C")])) == []


def test_section_with_chord_parent_is_not_a_complex():
    # A -> B -- C <- D with A -> C as well: A is adjacent to two section nodes
    g = G("ABCD", [("A", "B"), ("D", "C"), ("A", "C")], [("B", "C")])
    assert Complex("A", ("B", "C"), "D") not in complexes(g)
    assert complexes(g) == brute_complexes(g)


def test_example_graph_triplexes(example_graph):
    assert triplexes(example_graph) == [Triplex("A", "B", "C", ARROW_LINE), Triplex("B", "C", "D", LINE_ARROW)]
    assert str(triplexes(example_graph)[1]) == "B -- C <- D"


def test_triplex_shapes():
    assert triplexes(G("ABC", [("A", "B"), ("C", "B")])) == [Triplex("A", "B", "C", ARROW_ARROW)]
    assert triplexes(G("ABC", [("A", "B"), ("B", "C")])) == []
    assert triplexes(G("ABC", undirected=[("A", "B"), ("B", "C")])) == []


def test_non_cg_rejected():
    g = G("ABC", [("A", "B"), ("B", "C"), ("C", "A")])
    with pytest.raises(InvalidGraphError):
        complexes(g)
    with pytest.raises(InvalidGraphError):
        triplexes(g)


def test_detection_matches_brute_force_scan(cgs_upto4):
    for g in cgs_upto4:
        assert complexes(g) == brute_complexes(g), g
        assert triplexes(g) == brute_triplexes(g), g


def test_markov_equivalent_examples():
    chain_dag = G("ABC", [("A", "B"), ("B", "C")])
    line = G("ABC", undirected=[("A", "B"), ("B", "C")])
    collider = G("ABC", [("A", "B"), ("C", "B")])
    flag = G("ABC", [("A", "B")], [("B", "C")])
    assert markov_equivalent(chain_dag, line, "lwf")
    assert not markov_equivalent(collider, line, "lwf")
    assert markov_equivalent(flag, collider, "amp")
    assert not markov_equivalent(flag, collider, "lwf")
    with pytest.raises(InvalidGraphError):
        markov_equivalent(line, G("ABD"), "lwf")
