"""
`folio rewrite`: variable-minimizing rewriting, or a single transformation step.
"""

import logging
from typing import Optional

import click

from folio.cli.dependencies import get_query_repository, get_run_config
from folio.core.error_handlers import handle_cli_errors
from folio.schemas.rewrite import RewriteDirectionEnum, RewriteRuleEnum, RewriteStep
from folio.services.formula_service import distinct_variable_count
from folio.services.normalize_service import apply_transformation
from folio.services.syntax_service import print_formula
from folio.services.thickness_service import minimize_variables

logger = logging.getLogger(__name__)


def _parse_path(_ctx, _param, value: Optional[str]) -> list[int]:
    if not value:
        return []
    try:
        return [int(part) for part in value.split(".")]
    except ValueError:
        raise click.BadParameter("expected child indices separated by dots, e.g. 0.1.0")


@click.command()
@click.argument("query", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--rule",
    type=click.Choice([r.value for r in RewriteRuleEnum]),
    default=None,
    help="Apply one transformation instead of minimizing variables.",
)
@click.option(
    "--path",
    "path",
    callback=_parse_path,
    default="",
    help="Child indices from the root to the rewritten node, e.g. 0.1.",
)
@click.option(
    "--direction",
    type=click.Choice([d.value for d in RewriteDirectionEnum]),
    default=RewriteDirectionEnum.FORWARD.value,
    show_default=True,
)
@click.option(
    "--operation",
    default=None,
    help="Sub-rule: commute or associate (alpha), double_negation (epsilon).",
)
@click.option("--symbol", default=None, help="New relation symbol (replacement).")
@click.pass_context
@handle_cli_errors
def rewrite(
    ctx: click.Context,
    query: str,
    rule: Optional[str],
    path: list[int],
    direction: str,
    operation: Optional[str],
    symbol: Optional[str],
) -> None:
    """
    Print QUERY rewritten to use at most thickness-many variables.

    With --rule, apply a single transformation at --path instead.
    """
    config = get_run_config(ctx, "rewrite", query_path=query)
    phi = get_query_repository(config).load(config.query_path)

    if rule is None:
        result = minimize_variables(phi)
        logger.info(
            "Rewrite command called",
            extra={
                "variables_before": distinct_variable_count(phi),
                "variables_after": distinct_variable_count(result),
            },
        )
    else:
        step = RewriteStep(
            rule=RewriteRuleEnum(rule),
            path=path,
            direction=RewriteDirectionEnum(direction),
            operation=operation,
            symbol=symbol,
        )
        result = apply_transformation(phi, step)
        logger.info("Transformation applied", extra={"rule": rule, "path": path})
    click.echo(print_formula(result))
