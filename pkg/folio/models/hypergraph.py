"""
Hypergraph and elimination-ordering models.
"""

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from folio.core.exceptions import PreconditionError

Vertex = Hashable
Pair = frozenset


def vertex_key(vertex: Vertex) -> str:
    """Sort key giving the lexicographic order on vertex names."""
    return str(vertex)


def complete_pairs(vertices: Iterable[Vertex]) -> set[Pair]:
    """K(S): every 2-subset of S."""
    return {frozenset(pair) for pair in itertools.combinations(set(vertices), 2)}


@dataclass(frozen=True)
class Hypergraph:
    """Hypergraph (V, E); edges are vertex sets, the empty edge is allowed."""

    vertices: frozenset
    edges: frozenset

    def __post_init__(self) -> None:
        edges = frozenset(frozenset(edge) for edge in self.edges)
        vertices = frozenset(self.vertices)
        for edge in edges:
            if not edge <= vertices:
                raise PreconditionError(
                    "hyperedge is not contained in the vertex set",
                    context={"edge": sorted(map(vertex_key, edge))},
                )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def from_edges(
        cls, edges: Iterable[Iterable[Vertex]], vertices: Optional[Iterable[Vertex]] = None
    ) -> "Hypergraph":
        """
        Build a hypergraph from an edge list.

        Args:
            edges: Hyperedges
            vertices: Vertex set; defaults to the union of the edges

        Returns:
            Hypergraph
        """
        edge_set = frozenset(frozenset(edge) for edge in edges)
        if vertices is None:
            vertex_set = frozenset().union(*edge_set) if edge_set else frozenset()
        else:
            vertex_set = frozenset(vertices)
        return cls(vertices=vertex_set, edges=edge_set)

    def sorted_vertices(self) -> list[Vertex]:
        return sorted(self.vertices, key=vertex_key)

    def add_edge(self, edge: Iterable[Vertex]) -> "Hypergraph":
        edge = frozenset(edge)
        return Hypergraph(vertices=self.vertices | edge, edges=self.edges | {edge})


@dataclass(frozen=True)
class EliminationOrdering:
    """Vertex ordering (v1, ..., vn) together with its fill edge set E'."""

    order: tuple
    fill: frozenset

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise PreconditionError("elimination ordering repeats a vertex")
        object.__setattr__(self, "fill", frozenset(frozenset(p) for p in self.fill))

    def position(self, vertex: Vertex) -> int:
        try:
            return self.order.index(vertex)
        except ValueError:
            raise PreconditionError(
                f"vertex {vertex} does not occur in the ordering",
                context={"vertex": vertex_key(vertex)},
            ) from None

    def lower_neighbors(self, vertex: Vertex) -> list[Vertex]:
        """Earlier vertices adjacent to the given one in E'."""
        index = self.position(vertex)
        return [u for u in self.order[:index] if frozenset((u, vertex)) in self.fill]

    def lower_degree(self, vertex: Vertex) -> int:
        return len(self.lower_neighbors(vertex))

    def lowerdeg(self) -> int:
        """Maximum lower degree over all vertices (0 for the empty ordering)."""
        return max((self.lower_degree(v) for v in self.order), default=0)

    def is_valid_for(self, primal_edges: Iterable[Pair]) -> bool:
        """
        Check the defining property of an elimination ordering.

        E' must contain the given primal edges and, for every vertex, any two
        distinct lower neighbors must be adjacent in E'.
        """
        if not all(frozenset(edge) <= set(self.order) for edge in self.fill):
            return False
        if not {frozenset(e) for e in primal_edges} <= self.fill:
            return False
        for vertex in self.order:
            lower = self.lower_neighbors(vertex)
            for u, w in itertools.combinations(lower, 2):
                if frozenset((u, w)) not in self.fill:
                    return False
        return True

    def restrict(self, length: int) -> "EliminationOrdering":
        """Prefix ordering (v1..v_length) with E' restricted to it."""
        kept = self.order[:length]
        keep = set(kept)
        return EliminationOrdering(
            order=kept, fill=frozenset(p for p in self.fill if p <= keep)
        )
