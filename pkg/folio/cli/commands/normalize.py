"""
`folio normalize`: negation normal form, organized form and layered form.
"""

import logging

import click

from folio.cli.dependencies import get_query_repository, get_run_config
from folio.core.error_handlers import handle_cli_errors
from folio.core.exceptions import InvariantViolation
from folio.schemas.rewrite import RewriteStep
from folio.schemas.run_config import NormalFormEnum
from folio.services.formula_service import is_nnf
from folio.services.normalize_service import (
    is_layered,
    is_organized,
    lay,
    nnf,
    organize,
    positively_combined_subformulas,
)
from folio.services.syntax_service import print_formula

logger = logging.getLogger(__name__)

_TRANSFORMS = {
    NormalFormEnum.NNF: nnf,
    NormalFormEnum.ORG: organize,
    NormalFormEnum.LAY: lay,
}

_CHECKS = {
    NormalFormEnum.NNF: ("in negation normal form", is_nnf),
    NormalFormEnum.ORG: ("organized", is_organized),
    NormalFormEnum.LAY: ("layered", is_layered),
}


@click.command()
@click.argument("query", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--form",
    type=click.Choice([f.value for f in NormalFormEnum]),
    default=NormalFormEnum.LAY.value,
    show_default=True,
    help="Normal form to produce.",
)
@click.option("--check", is_flag=True, help="Verify every positively combined leaf.")
@click.option("--trace", is_flag=True, help="Emit each rewrite step as a JSON line first.")
@click.pass_context
@handle_cli_errors
def normalize(ctx: click.Context, query: str, form: str, check: bool, trace: bool) -> None:
    """Print QUERY in the chosen normal form."""
    config = get_run_config(ctx, "normalize", query_path=query)
    phi = get_query_repository(config).load(config.query_path)
    target = NormalFormEnum(form)

    steps: list[RewriteStep] | None = [] if trace else None
    result = _TRANSFORMS[target](phi, steps)
    logger.info(
        "Normalize command called",
        extra={"form": target.value, "steps": len(steps) if steps is not None else None},
    )

    if check:
        label, predicate = _CHECKS[target]
        leaves = (
            [result] if target is NormalFormEnum.NNF else positively_combined_subformulas(result)
        )
        failing = [print_formula(leaf) for leaf in leaves if not predicate(leaf)]
        if failing:
            raise InvariantViolation(
                f"{len(failing)} leaves are not {label}", context={"first": failing[0]}
            )
        click.echo(f"check: every leaf is {label}", err=True)

    for step in steps or ():
        click.echo(step.model_dump_json(exclude_none=True))
    click.echo(print_formula(result))
