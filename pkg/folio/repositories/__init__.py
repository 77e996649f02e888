"""
Repository layer initialization.
"""

from folio.repositories.graph_repository import GraphRepository
from folio.repositories.query_repository import QueryRepository
from folio.repositories.structure_repository import StructureRepository

__all__ = [
    "GraphRepository",
    "QueryRepository",
    "StructureRepository",
]
