"""
Unit tests for hypergraphs, elimination orderings and exact treewidth.
"""

import random

import networkx as nx
import pytest

from folio.core.exceptions import LimitExceededError, PreconditionError
from folio.models.hypergraph import EliminationOrdering, Hypergraph
from folio.services.generator_service import graph_hypergraph, random_hypergraph
from folio.services.treewidth_service import (
    brute_force_treewidth,
    elimination_ordering_with_prefix,
    ordering_from_sequence,
    primal_edges,
    primal_graph,
    s_connected,
    to_dot,
    treewidth,
)


@pytest.fixture
def path_graph():
    """Path a - b - c."""
    return Hypergraph.from_edges([{"a", "b"}, {"b", "c"}])


@pytest.fixture
def square():
    """Cycle a - b - c - d - a."""
    return Hypergraph.from_edges([{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}])


class TestHypergraph:
    """Test suite for the hypergraph model."""

    def test_edge_outside_vertices(self):
        """Edges must be vertex subsets."""
        with pytest.raises(PreconditionError):
            Hypergraph(vertices=frozenset({"a"}), edges=frozenset({frozenset({"a", "b"})}))

    def test_primal_graph(self):
        """A hyperedge becomes a clique in the primal graph."""
        hypergraph = Hypergraph.from_edges([{"a", "b", "c"}, {"d"}])
        graph = primal_graph(hypergraph)
        assert set(graph.nodes) == {"a", "b", "c", "d"}
        assert graph.number_of_edges() == 3
        assert primal_edges(hypergraph) == {
            frozenset({"a", "b"}),
            frozenset({"a", "c"}),
            frozenset({"b", "c"}),
        }

    def test_s_connected(self):
        """Edges are linked only through vertices of S."""
        hypergraph = Hypergraph.from_edges([{"x", "y"}, {"y", "z"}])
        assert s_connected(hypergraph, {"y"})
        assert not s_connected(hypergraph, {"x", "z"})

    def test_single_edge_is_s_connected(self):
        """No edges or one edge counts as connected."""
        assert s_connected(Hypergraph.from_edges([{"x"}]), set())
        assert s_connected(Hypergraph.from_edges([]), set())


class TestEliminationOrdering:
    """Test suite for elimination orderings."""

    def test_repeated_vertex(self):
        """An ordering lists each vertex once."""
        with pytest.raises(PreconditionError):
            EliminationOrdering(order=("a", "a"), fill=frozenset())

    def test_fill_edges_close_lower_neighbors(self, square):
        """Completing a sequence adds the chord between lower neighbors."""
        ordering = ordering_from_sequence(square, ["a", "b", "c", "d"])
        assert frozenset({"a", "c"}) in ordering.fill
        assert ordering.lower_neighbors("d") == ["a", "c"]
        assert ordering.lowerdeg() == 2
        assert ordering.is_valid_for(primal_edges(square))

    def test_missing_fill_is_invalid(self, square):
        """Without the chord the ordering property fails."""
        ordering = EliminationOrdering(order=("a", "b", "c", "d"), fill=primal_edges(square))
        assert not ordering.is_valid_for(primal_edges(square))

    def test_sequence_must_cover_vertices(self, square):
        """Sequences list every vertex exactly once."""
        with pytest.raises(PreconditionError):
            ordering_from_sequence(square, ["a", "b"])

    def test_restrict(self, square):
        """A prefix keeps only the fill edges inside it."""
        prefix = ordering_from_sequence(square, ["a", "b", "c", "d"]).restrict(3)
        assert prefix.order == ("a", "b", "c")
        assert frozenset({"c", "d"}) not in prefix.fill
        assert frozenset({"a", "c"}) in prefix.fill


class TestTreewidth:
    """Test suite for exact treewidth."""

    def test_known_values(self, path_graph, square):
        """Paths have width 1, cycles 2 and K4 3."""
        assert treewidth(path_graph) == 1
        assert treewidth(square) == 2
        assert treewidth(graph_hypergraph(nx.complete_graph(["a", "b", "c", "d"]))) == 3

    def test_hyperedge_and_isolated_vertices(self):
        """A 3-vertex hyperedge gives width 2; edgeless graphs give 0."""
        assert treewidth(Hypergraph.from_edges([{"x", "y", "z"}])) == 2
        assert treewidth(Hypergraph.from_edges([], vertices={"x", "y"})) == 0
        assert treewidth(Hypergraph.from_edges([])) == 0

    def test_components_take_the_maximum(self, path_graph):
        """Disjoint parts are measured separately."""
        triangle = [{"p", "q"}, {"q", "r"}, {"r", "p"}]
        hypergraph = Hypergraph.from_edges(list(path_graph.edges) + triangle)
        assert treewidth(hypergraph) == 2

    def test_matches_brute_force(self):
        """The memoized search agrees with trying every permutation."""
        rng = random.Random(7)
        for _ in range(25):
            hypergraph, _ = random_hypergraph(rng, max_vertices=6)
            assert treewidth(hypergraph) == brute_force_treewidth(hypergraph)

    def test_vertex_limit(self, path_graph):
        """Inputs above the limit are refused."""
        with pytest.raises(LimitExceededError):
            treewidth(path_graph, limit=2)


class TestPrefixOrdering:
    """Test suite for elimination_ordering_with_prefix."""

    def test_prefix_edge_comes_first(self, path_graph):
        """The ordering starts with the edge and reaches the treewidth."""
        ordering = elimination_ordering_with_prefix(path_graph, {"b", "a"})
        assert ordering.order[:2] == ("a", "b")
        assert ordering.lowerdeg() == 1

    def test_every_random_edge_works_as_prefix(self):
        """Any hyperedge can lead an optimal ordering."""
        rng = random.Random(11)
        for _ in range(20):
            hypergraph, edge = random_hypergraph(rng, max_vertices=6)
            ordering = elimination_ordering_with_prefix(hypergraph, edge)
            assert set(ordering.order[: len(edge)]) == set(edge)
            assert ordering.lowerdeg() == treewidth(hypergraph)
            assert ordering.is_valid_for(primal_edges(hypergraph))

    def test_non_clique_prefix_fails(self, path_graph):
        """Leading with {a, c} forces a fill edge and misses width 1."""
        with pytest.raises(PreconditionError):
            elimination_ordering_with_prefix(path_graph, {"a", "c"})

    def test_prefix_outside_vertices(self, path_graph):
        """The prefix must be a vertex subset."""
        with pytest.raises(PreconditionError):
            elimination_ordering_with_prefix(path_graph, {"z"})


class TestToDot:
    """Test suite for DOT rendering."""

    def test_ordering_labels_and_fill(self, square):
        """Positions label vertices and fill edges are dashed."""
        ordering = ordering_from_sequence(square, ["a", "b", "c", "d"])
        text = to_dot(square, ordering, name="block_root")
        assert "block_root" in text
        assert "1: a" in text
        assert "dashed" in text
