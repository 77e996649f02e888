"""
`folio thickness`: thickness analysis of a formula.
"""

import logging

import click

from folio.cli.dependencies import get_query_repository, get_run_config
from folio.core.error_handlers import handle_cli_errors
from folio.schemas.run_config import OutputFormatEnum
from folio.services.thickness_service import analyze, block_orderings
from folio.services.treewidth_service import to_dot

logger = logging.getLogger(__name__)


def _path_label(path) -> str:
    return ".".join(str(i) for i in path) or "root"


@click.command()
@click.argument("query", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit the AnalysisReport as JSON.")
@click.option(
    "--dot",
    is_flag=True,
    help="Emit the primal graph and elimination ordering of every block in DOT format.",
)
@click.pass_context
@handle_cli_errors
def thickness(ctx: click.Context, query: str, as_json: bool, dot: bool) -> None:
    """Print the thickness of QUERY with its per-block measures."""
    config = get_run_config(
        ctx,
        "thickness",
        query_path=query,
        output_format=OutputFormatEnum.JSON if as_json else OutputFormatEnum.TEXT,
    )
    phi = get_query_repository(config).load(config.query_path)

    if dot:
        for path, hypergraph, ordering in block_orderings(phi):
            name = "block_" + _path_label(path).replace(".", "_")
            click.echo(to_dot(hypergraph, ordering, name=name))
        return

    report = analyze(phi)
    if config.output_format is OutputFormatEnum.JSON:
        click.echo(report.model_dump_json(indent=2, exclude_none=True))
        return

    click.echo(f"thickness: {report.thickness}")
    click.echo(f"width: {report.width_before} -> {report.width_after}")
    click.echo(f"variables: {report.variables_before} -> {report.variables_used_after}")
    for node in report.per_node:
        click.echo(
            f"block {_path_label(node.path)}: local={node.local} quantified={node.quantified}"
        )
