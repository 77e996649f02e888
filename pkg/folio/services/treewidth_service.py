"""
Treewidth service: primal graphs, S-connectedness and exact elimination orderings.

Orderings follow the lower-neighbor convention: in (v1, ..., vn) the lower
neighbors of v_k are the earlier vertices adjacent to it in the fill set, so the
vertex eliminated first is v_n.
"""

import itertools
import logging
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import networkx as nx
import pydot
from networkx.algorithms.approximation import treewidth_min_degree

from folio.core.config import settings
from folio.core.exceptions import LimitExceededError, PreconditionError
from folio.models.hypergraph import (
    EliminationOrdering,
    Hypergraph,
    Vertex,
    complete_pairs,
    vertex_key,
)

logger = logging.getLogger(__name__)


def primal_graph(hypergraph: Hypergraph) -> nx.Graph:
    """
    Graph on V(H) whose edges are all 2-subsets of hyperedges.

    Args:
        hypergraph: Hypergraph

    Returns:
        networkx Graph
    """
    graph = nx.Graph()
    graph.add_nodes_from(hypergraph.sorted_vertices())
    for edge in hypergraph.edges:
        graph.add_edges_from(itertools.combinations(sorted(edge, key=vertex_key), 2))
    return graph


def primal_edges(hypergraph: Hypergraph) -> set[frozenset]:
    edges: set[frozenset] = set()
    for edge in hypergraph.edges:
        edges |= complete_pairs(edge)
    return edges


def s_connected(hypergraph: Hypergraph, s: Iterable[Vertex]) -> bool:
    """
    Whether the edges of H are S-connected: the graph on E(H) joining two edges
    that share a vertex of S is connected. No edges or a single edge count as
    connected.
    """
    s = frozenset(s)
    edges = sorted(hypergraph.edges, key=lambda e: sorted(map(vertex_key, e)))
    if len(edges) <= 1:
        return True
    graph = nx.Graph()
    graph.add_nodes_from(range(len(edges)))
    for i, j in itertools.combinations(range(len(edges)), 2):
        if s & edges[i] & edges[j]:
            graph.add_edge(i, j)
    return nx.is_connected(graph)


def lower_degree(ordering: EliminationOrdering, vertex: Vertex) -> int:
    """Number of earlier vertices adjacent to the given one in E'."""
    return ordering.lower_degree(vertex)


def lowerdeg(ordering: EliminationOrdering) -> int:
    return ordering.lowerdeg()


def ordering_from_sequence(hypergraph: Hypergraph, order: Sequence[Vertex]) -> EliminationOrdering:
    """
    Complete a vertex sequence into an elimination ordering.

    The fill set starts from the primal edges; walking from the last vertex to
    the first, the lower neighbors of each vertex are made pairwise adjacent.
    """
    if set(order) != set(hypergraph.vertices) or len(order) != len(hypergraph.vertices):
        raise PreconditionError("sequence must list every vertex exactly once")
    fill = primal_edges(hypergraph)
    position = {v: i for i, v in enumerate(order)}
    for vertex in reversed(order):
        lower = [
            u for u in order[: position[vertex]] if frozenset((u, vertex)) in fill
        ]
        fill |= complete_pairs(lower)
    return EliminationOrdering(order=tuple(order), fill=frozenset(fill))


class _EliminationSearch:
    """
    Exact minimum over elimination sequences, memoized on the set of already
    eliminated vertices (bitmasks over the lexicographically sorted vertices).

    best(S) is the least possible maximum elimination degree when exactly the
    vertices of S are eliminated first, in some order.
    """

    def __init__(self, graph: nx.Graph, vertices: list[Vertex]):
        self.vertices = vertices
        index = {v: i for i, v in enumerate(vertices)}
        self.adjacency = [0] * len(vertices)
        for u, w in graph.edges:
            self.adjacency[index[u]] |= 1 << index[w]
            self.adjacency[index[w]] |= 1 << index[u]
        self.best = lru_cache(maxsize=None)(self._best)

    def degree(self, eliminated: int, vertex: int) -> int:
        """Neighbors of vertex at the time it is eliminated after `eliminated`."""
        component = frontier = 1 << vertex
        reached = 0
        while frontier:
            neighbors = 0
            remaining = frontier
            while remaining:
                low = remaining & -remaining
                neighbors |= self.adjacency[low.bit_length() - 1]
                remaining ^= low
            reached |= neighbors
            frontier = neighbors & eliminated & ~component
            component |= frontier
        return (reached & ~eliminated & ~(1 << vertex)).bit_count()

    def _best(self, eliminated: int) -> tuple[int, int]:
        """(value, index of the vertex eliminated last) for the set `eliminated`."""
        if not eliminated:
            return -1, -1
        best_value, best_vertex = len(self.vertices), -1
        remaining = eliminated
        while remaining:
            low = remaining & -remaining
            vertex = low.bit_length() - 1
            remaining ^= low
            rest = eliminated & ~low
            degree = self.degree(rest, vertex)
            if degree >= best_value:
                continue
            value = max(degree, self.best(rest)[0])
            if value < best_value:
                best_value, best_vertex = value, vertex
        return best_value, best_vertex

    def sequence(self, eliminated: int) -> list[Vertex]:
        """Optimal vertices of `eliminated`, listed from last eliminated to first."""
        order = []
        while eliminated:
            _, vertex = self.best(eliminated)
            order.append(self.vertices[vertex])
            eliminated &= ~(1 << vertex)
        return order


def _check_limit(hypergraph: Hypergraph, limit: Optional[int]) -> None:
    limit = settings.max_treewidth_vertices if limit is None else limit
    if len(hypergraph.vertices) > limit:
        raise LimitExceededError(
            f"hypergraph has {len(hypergraph.vertices)} vertices, limit is {limit}",
            context={"vertices": len(hypergraph.vertices), "limit": limit},
        )


def treewidth(hypergraph: Hypergraph, limit: Optional[int] = None) -> int:
    """
    Exact treewidth of the primal graph.

    Args:
        hypergraph: Hypergraph
        limit: Vertex limit (defaults to settings.max_treewidth_vertices)

    Returns:
        Minimum over elimination orderings of the maximum lower degree

    Raises:
        LimitExceededError: too many vertices for the exact search
    """
    _check_limit(hypergraph, limit)
    graph = primal_graph(hypergraph)
    width = 0
    for component in nx.connected_components(graph):
        if len(component) <= 2:
            width = max(width, len(component) - 1)
            continue
        subgraph = graph.subgraph(component)
        vertices = sorted(component, key=vertex_key)
        search = _EliminationSearch(subgraph, vertices)
        exact = search.best((1 << len(vertices)) - 1)[0]
        width = max(width, exact)
        if logger.isEnabledFor(logging.DEBUG):
            logger.debug(
                "Component treewidth",
                extra={
                    "vertices": len(vertices),
                    "exact": exact,
                    "min_degree_bound": treewidth_min_degree(subgraph)[0],
                },
            )
    return width


def elimination_ordering_with_prefix(
    hypergraph: Hypergraph, prefix: Iterable[Vertex], limit: Optional[int] = None
) -> EliminationOrdering:
    """
    Elimination ordering of minimum lower degree whose first vertices are `prefix`.

    Args:
        hypergraph: Hypergraph
        prefix: Distinguished edge f (a subset of the vertices)
        limit: Vertex limit for the exact search

    Returns:
        Ordering starting with f (sorted) with lowerdeg equal to tw(H)

    Raises:
        PreconditionError: f is not a vertex subset, or no ordering with prefix f
            reaches tw(H)
        LimitExceededError: too many vertices for the exact search
    """
    _check_limit(hypergraph, limit)
    prefix = frozenset(prefix)
    if not prefix <= hypergraph.vertices:
        raise PreconditionError(
            "distinguished edge is not a subset of the vertices",
            context={"prefix": sorted(map(vertex_key, prefix))},
        )
    graph = primal_graph(hypergraph)
    vertices = hypergraph.sorted_vertices()
    search = _EliminationSearch(graph, vertices)
    rest = 0
    for i, vertex in enumerate(vertices):
        if vertex not in prefix:
            rest |= 1 << i

    head = sorted(prefix, key=vertex_key)
    ordering = ordering_from_sequence(hypergraph, head + search.sequence(rest))
    width = treewidth(hypergraph, limit)
    if ordering.lowerdeg() != width:
        raise PreconditionError(
            f"no elimination ordering starting with the given edge reaches treewidth {width}",
            context={"prefix": [vertex_key(v) for v in head], "found": ordering.lowerdeg()},
        )
    return ordering


def brute_force_treewidth(hypergraph: Hypergraph) -> int:
    """Minimum lowerdeg over every vertex permutation; for cross-checking small inputs."""
    if not hypergraph.vertices:
        return 0
    return min(
        ordering_from_sequence(hypergraph, order).lowerdeg()
        for order in itertools.permutations(hypergraph.sorted_vertices())
    )


def to_dot(
    hypergraph: Hypergraph, ordering: Optional[EliminationOrdering] = None, name: str = "block"
) -> str:
    """
    Render the primal graph (and optionally an ordering) in DOT format.

    Vertices are labeled with their ordering position; fill edges that are not
    primal edges are dashed.
    """
    dot = pydot.Dot(name, graph_type="graph")
    position = {v: i + 1 for i, v in enumerate(ordering.order)} if ordering else {}
    for vertex in hypergraph.sorted_vertices():
        label = vertex_key(vertex)
        if vertex in position:
            label = f"{position[vertex]}: {label}"
        dot.add_node(pydot.Node(vertex_key(vertex), label=f'"{label}"'))
    primal = primal_edges(hypergraph)
    edges = set(primal) | (set(ordering.fill) if ordering else set())
    for edge in sorted(edges, key=lambda e: sorted(map(vertex_key, e))):
        u, w = sorted(edge, key=vertex_key)
        attributes = {} if edge in primal else {"style": "dashed"}
        dot.add_edge(pydot.Edge(vertex_key(u), vertex_key(w), **attributes))
    return dot.to_string()
