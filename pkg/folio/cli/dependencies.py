"""
Shared wiring for CLI commands: run configuration, repositories and settings overrides.
"""

from contextlib import contextmanager
from typing import Iterator, Optional

import click

from folio.core.config import settings
from folio.repositories import GraphRepository, QueryRepository, StructureRepository
from folio.schemas.run_config import RunConfig


def get_run_config(ctx: click.Context, command: str, **fields) -> RunConfig:
    """Build the RunConfig of one invocation from the group options and command fields."""
    group = ctx.find_root().obj or {}
    values = {key: value for key, value in {**group, **fields}.items() if value is not None}
    return RunConfig(command=command, **values)


def get_query_repository(config: RunConfig) -> QueryRepository:
    """Dependency to get a QueryRepository honouring the AST node limit."""
    return QueryRepository(max_ast_nodes=config.max_ast_nodes)


def get_structure_repository() -> StructureRepository:
    """Dependency to get a StructureRepository instance."""
    return StructureRepository()


def get_graph_repository() -> GraphRepository:
    """Dependency to get a GraphRepository instance."""
    return GraphRepository()


@contextmanager
def override_settings(
    max_ast_nodes: Optional[int] = None, max_treewidth_vertices: Optional[int] = None
) -> Iterator[None]:
    """Apply limits given on the command line for the duration of one invocation."""
    saved = (settings.max_ast_nodes, settings.max_treewidth_vertices)
    if max_ast_nodes is not None:
        settings.max_ast_nodes = max_ast_nodes
    if max_treewidth_vertices is not None:
        settings.max_treewidth_vertices = max_treewidth_vertices
    try:
        yield
    finally:
        settings.max_ast_nodes, settings.max_treewidth_vertices = saved
