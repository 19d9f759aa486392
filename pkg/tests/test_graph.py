import pytest
from hypothesis import given, strategies as st

from chaingraph.errors import InvalidGraphError, UnknownNodeError
from chaingraph.graph import (Chain, MixedGraph, chain_consistent, connectivity_components,
                              induced_subgraph, relatives, validate_cg)

from strategies import chain_graphs


def G(nodes, directed=(), undirected=()):
    return MixedGraph.from_edges(nodes, directed, undirected)


def test_simple_graph_rejects_two_edges_on_a_pair():
    with pytest.raises(InvalidGraphError):
        G("AB", [("A", "B")], [("A", "B")])
    with pytest.raises(InvalidGraphError):
        G("AB", [("A", "B"), ("B", "A")])


def test_self_loop_and_unknown_node():
    with pytest.raises(InvalidGraphError):
        G("A", [("A", "A")])
    with pytest.raises(UnknownNodeError):
        G("A", [("A", "B")])


def test_equality_ignores_declaration_order():
    assert G("AB", [("A", "B")]) == G("BA", [("A", "B")])
    assert G("AB", undirected=[("B", "A")]) == G("AB", undirected=[("A", "B")])
    assert G("AB", [("A", "B")]) != G("AB", [("B", "A")])


@pytest.mark.parametrize("x, rel, expected", [
    ({"B"}, "pa", {"A"}),
    ({"A"}, "ch", {"B"}),
    ({"B"}, "ne", {"C"}),
    ({"B"}, "bd", {"A", "C"}),
    ({"C"}, "ad", {"B", "D"}),
    ({"A"}, "de", {"B", "C"}),
    ({"C"}, "san", {"D"}),
    ({"B"}, "co", {"B", "C"}),
    ({"B", "C"}, "pa", {"A", "D"}),
    ({"B", "C"}, "ne", set()),
    ({"D"}, "de", {"C", "B"}),
])
def test_relatives_on_example_graph(example_graph, x, rel, expected):
    assert relatives(example_graph, x, rel) == expected


def test_relatives_errors(example_graph):
    with pytest.raises(UnknownNodeError):
        relatives(example_graph, {"Q"}, "pa")
    with pytest.raises(ValueError):
        relatives(example_graph, {"A", "B"}, "co")
    with pytest.raises(ValueError):
        relatives(example_graph, {"A"}, "sibling")


def test_connectivity_components(example_graph):
    assert connectivity_components(example_graph) == [{"A"}, {"B", "C"}, {"D"}]
    assert connectivity_components(G("ABC", undirected=[("A", "B"), ("B", "C")])) == [{"A", "B", "C"}]
    assert connectivity_components(G("AB", [("A", "B")])) == [{"A"}, {"B"}]


def test_induced_subgraph(example_graph):
    assert induced_subgraph(example_graph, set("ABC")) == G("ABC", [("A", "B")], [("B", "C")])
    assert induced_subgraph(example_graph, set("AD")) == G("AD")
    assert induced_subgraph(example_graph, example_graph.nodes) == example_graph
    with pytest.raises(UnknownNodeError):
        induced_subgraph(example_graph, set("AZ"))


def test_validate_cg():
    assert validate_cg(G("ABCD", [("A", "B"), ("D", "C")], [("B", "C")])) == []
    assert validate_cg(G("ABC", [("A", "B"), ("C", "A")], [("B", "C")])) == [("A", "B", "C", "A")]
    assert validate_cg(G("")) == []
    # purely undirected cycles are fine
    assert validate_cg(G("ABC", undirected=[("A", "B"), ("B", "C"), ("A", "C")])) == []
    assert not G("ABC", [("A", "B"), ("B", "C"), ("C", "A")]).is_cg


def test_chain_consistent(example_graph):
    assert chain_consistent(example_graph, Chain(({"A", "D"}, {"B", "C"})))
    assert not chain_consistent(example_graph, Chain(({"B", "C"}, {"A", "D"})))
    assert not chain_consistent(example_graph, Chain(({"A", "B", "C", "D"},)))
    with pytest.raises(InvalidGraphError):
        chain_consistent(example_graph, Chain(({"A", "B"},)))


def test_chain_rejects_overlap_and_empty_blocks():
    with pytest.raises(InvalidGraphError):
        Chain(({"A"}, {"A", "B"}))
    with pytest.raises(InvalidGraphError):
        Chain(({"A"}, set()))


@given(chain_graphs(max_nodes=6), st.data())
def test_boundary_and_adjacents_compose(g, data):
    x = data.draw(st.sets(st.sampled_from(sorted(g.nodes)), min_size=1))
    ne, pa, ch = (relatives(g, x, r) for r in ("ne", "pa", "ch"))
    assert relatives(g, x, "bd") == ne | pa
    assert relatives(g, x, "ad") == ne | pa | ch
    for r in ("pa", "ch", "ne", "bd", "ad", "de", "san"):
        assert not relatives(g, x, r) & x


@given(chain_graphs(max_nodes=6), st.data())
def test_san_only_uses_directed_edges(g, data):
    x = data.draw(st.sets(st.sampled_from(sorted(g.nodes)), min_size=1))
    directed_only = MixedGraph(g.nodes, g.directed)
    assert relatives(g, x, "san") == relatives(directed_only, x, "san")


@given(chain_graphs(max_nodes=6), st.data())
def test_induced_subgraph_idempotent_and_monotone(g, data):
    big = data.draw(st.sets(st.sampled_from(sorted(g.nodes))))
    small = data.draw(st.sets(st.sampled_from(sorted(big)))) if big else set()
    h = induced_subgraph(g, big)
    assert induced_subgraph(h, big) == h
    k = induced_subgraph(g, small)
    assert k.directed <= h.directed and k.undirected <= h.undirected


@given(chain_graphs(max_nodes=6, with_chain=True))
def test_generated_graphs_are_cgs_consistent_with_their_chain(pair):
    g, alpha = pair
    assert validate_cg(g) == []
    assert chain_consistent(g, alpha)
    comps = connectivity_components(g)
    assert sorted(n for c in comps for n in c) == sorted(g.nodes)
