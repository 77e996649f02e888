"""
`folio parse`: check a formula file and print it back.
"""

import logging

import click

from folio.cli.dependencies import get_query_repository, get_run_config
from folio.core.error_handlers import handle_cli_errors
from folio.models.formula import node_count
from folio.schemas.report import FormulaSummary
from folio.schemas.run_config import OutputFormatEnum
from folio.services.formula_service import distinct_variable_count, width
from folio.services.syntax_service import print_formula, signature_of

logger = logging.getLogger(__name__)


@click.command()
@click.argument("query", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON summary.")
@click.pass_context
@handle_cli_errors
def parse(ctx: click.Context, query: str, as_json: bool) -> None:
    """Parse QUERY and print it in canonical form."""
    config = get_run_config(
        ctx,
        "parse",
        query_path=query,
        output_format=OutputFormatEnum.JSON if as_json else OutputFormatEnum.TEXT,
    )
    phi = get_query_repository(config).load(config.query_path)
    logger.info("Parse command called", extra={"query": query})

    if config.output_format is OutputFormatEnum.TEXT:
        click.echo(print_formula(phi))
        return
    signature = signature_of(phi)
    summary = FormulaSummary(
        formula=print_formula(phi),
        free=sorted(str(v) for v in phi.free),
        width=width(phi),
        variables=distinct_variable_count(phi),
        nodes=node_count(phi),
        relations={s: list(a) for s, a in sorted(signature.relations.items())},
    )
    click.echo(summary.model_dump_json(indent=2))
