"""
Graph repository for edge-list files.
"""

import logging
from pathlib import Path
from typing import Union

import networkx as nx

from folio.core.exceptions import StructureError

logger = logging.getLogger(__name__)


class GraphRepository:
    """Repository for graph edge-list access."""

    @staticmethod
    def parse(text: str) -> nx.Graph:
        """
        Parse an edge list: one "u v" per line.

        A line with a single token adds an isolated vertex. Blank lines and
        lines starting with '#' are skipped.

        Raises:
            StructureError: a line has more than two tokens
        """
        graph = nx.Graph()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) == 1:
                graph.add_node(tokens[0])
            elif len(tokens) == 2:
                graph.add_edge(tokens[0], tokens[1])
            else:
                raise StructureError(
                    f"edge list line {number} has {len(tokens)} fields",
                    context={"line": number},
                )
        return graph

    def load(self, location: Union[str, Path]) -> nx.Graph:
        """Read an edge-list file into an undirected graph."""
        path = Path(location)
        graph = self.parse(path.read_text(encoding="utf-8"))
        logger.info(
            "Loaded graph",
            extra={
                "path": str(path),
                "vertices": graph.number_of_nodes(),
                "edges": graph.number_of_edges(),
            },
        )
        return graph
