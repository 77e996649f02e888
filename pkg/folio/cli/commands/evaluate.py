"""
`folio eval`: model checking with the naive, bounded or thickness-based engine.
"""

import logging

import click

from folio.cli.dependencies import (
    get_query_repository,
    get_run_config,
    get_structure_repository,
)
from folio.core.error_handlers import handle_cli_errors
from folio.core.exceptions import EXIT_FALSE, EXIT_TRUE, InvariantViolation
from folio.schemas.run_config import EngineEnum
from folio.services.engine_service import run_engine
from folio.services.semantics_service import naive_eval
from folio.services.syntax_service import print_formula

logger = logging.getLogger(__name__)


@click.command(name="eval")
@click.option(
    "--engine",
    type=click.Choice([e.value for e in EngineEnum]),
    default=EngineEnum.FPT.value,
    show_default=True,
)
@click.option(
    "--db",
    required=True,
    type=click.Path(exists=True),
    help="Structure JSON file or directory of relation CSV files.",
)
@click.option("--query", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--stats", is_flag=True, help="Emit evaluation statistics as JSON.")
@click.option("--verify", is_flag=True, help="Cross-check the result with the naive engine.")
@click.pass_context
@handle_cli_errors
def evaluate(
    ctx: click.Context, engine: str, db: str, query: str, stats: bool, verify: bool
) -> None:
    """
    Decide whether the structure DB satisfies the sentence QUERY.

    Exit code 0 means true, 1 means false.
    """
    config = get_run_config(ctx, "eval", query_path=query, db_path=db, engine=engine)
    structure = get_structure_repository().load(config.db_path)
    phi = get_query_repository(config).load(config.query_path, structure.signature)

    result = run_engine(config.engine, structure, phi)
    if verify and config.engine is not EngineEnum.NAIVE:
        expected = naive_eval(structure, phi)
        if expected != result.result:
            raise InvariantViolation(
                f"{config.engine.value} engine disagrees with naive evaluation",
                context={"formula": print_formula(phi), "expected": expected},
            )
        logger.info("Verified against naive evaluation", extra={"engine": config.engine.value})

    if stats:
        click.echo(result.model_dump_json(indent=2, exclude_none=True))
    else:
        click.echo(str(result.result).lower())
    ctx.exit(EXIT_TRUE if result.result else EXIT_FALSE)
