"""
Command-line interface: the `folio` click group and its commands.
"""

from typing import Optional

import click

from folio import __version__
from folio.cli.commands import evaluate, gadget, normalize, parse, rewrite, selftest, thickness
from folio.cli.dependencies import override_settings


@click.group()
@click.version_option(__version__, prog_name="folio")
@click.option(
    "--max-ast-nodes",
    type=click.IntRange(min=1),
    default=None,
    help="Reject formulas with more AST nodes (default FOLIO_MAX_AST_NODES).",
)
@click.option(
    "--max-treewidth-vertices",
    type=click.IntRange(min=1),
    default=None,
    help="Vertex limit of the exact treewidth search (default FOLIO_MAX_TREEWIDTH_VERTICES).",
)
@click.pass_context
def cli(
    ctx: click.Context, max_ast_nodes: Optional[int], max_treewidth_vertices: Optional[int]
) -> None:
    """Analyze, rewrite and model-check first-order sentences."""
    ctx.obj = {
        "max_ast_nodes": max_ast_nodes,
        "max_treewidth_vertices": max_treewidth_vertices,
    }
    ctx.with_resource(override_settings(max_ast_nodes, max_treewidth_vertices))


cli.add_command(parse.parse)
cli.add_command(normalize.normalize)
cli.add_command(thickness.thickness)
cli.add_command(rewrite.rewrite)
cli.add_command(evaluate.evaluate)
cli.add_command(gadget.gadget)
cli.add_command(selftest.selftest)

__all__ = ["cli"]
