"""
`folio gadget`: structure constructions for the clique and accordion reductions.
"""

import logging
from typing import Optional

import click

from folio.cli.dependencies import (
    get_graph_repository,
    get_query_repository,
    get_run_config,
    get_structure_repository,
)
from folio.core.error_handlers import handle_cli_errors
from folio.models.gadget import AccordionCase
from folio.models.structure import Structure
from folio.services.gadget_service import (
    accordion_source,
    accordion_step,
    clique_gadget,
    co_clique_gadget,
    make_symbol_loose,
    simple_subformulas,
)
from folio.services.syntax_service import print_formula

logger = logging.getLogger(__name__)


def _emit(structure: Structure, output: Optional[str]) -> None:
    repository = get_structure_repository()
    if output:
        repository.save(structure, output)
    else:
        click.echo(repository.dumps(structure))


@click.group()
def gadget() -> None:
    """Build structures that transfer model checking between problems."""


@gadget.command()
@click.option("--k", "k", required=True, type=click.IntRange(min=1), help="Clique size.")
@click.option("--query", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--graph",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Edge list, one 'u v' per line.",
)
@click.option(
    "--universal",
    is_flag=True,
    help="Use a universal clique: the structure satisfies QUERY iff the graph has no k-clique.",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_cli_errors
def clique(
    ctx: click.Context, k: int, query: str, graph: str, universal: bool, output: Optional[str]
) -> None:
    """Structure satisfying QUERY exactly when GRAPH has a k-clique."""
    config = get_run_config(ctx, "gadget", query_path=query)
    theta = get_query_repository(config).load(config.query_path)
    edges = get_graph_repository().load(graph)
    build = co_clique_gadget if universal else clique_gadget
    structure = build(k, theta, edges)
    logger.info("Clique gadget command called", extra={"k": k, "universal": universal})
    _emit(structure, output)


@gadget.command()
@click.option("--psi", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--phi", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--db",
    required=True,
    type=click.Path(exists=True),
    help="Structure for psi (JSON file or CSV directory).",
)
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@click.pass_context
@handle_cli_errors
def accordion(ctx: click.Context, psi: str, phi: str, db: str, output: Optional[str]) -> None:
    """Structure for PHI that satisfies PHI exactly when DB satisfies PSI."""
    config = get_run_config(ctx, "gadget", query_path=phi, db_path=db)
    queries = get_query_repository(config)
    source = get_structure_repository().load(config.db_path)
    partner = queries.load(psi)
    target = queries.load(config.query_path)
    _emit(accordion_step(partner, target, source), output)


@gadget.command()
@click.option("--phi", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--case",
    "case",
    type=click.Choice([c.name.lower() for c in AccordionCase]),
    default=None,
    help="Print the partner sentence for this case instead of listing simple subformulas.",
)
@click.option("--index", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--loose", is_flag=True, help="Make PHI symbol-loose first.")
@click.pass_context
@handle_cli_errors
def source(ctx: click.Context, phi: str, case: Optional[str], index: int, loose: bool) -> None:
    """
    List the simple subformulas of PHI, or print the partner sentence psi for
    the one at position --index.
    """
    config = get_run_config(ctx, "gadget", query_path=phi)
    formula = get_query_repository(config).load(config.query_path)
    if loose:
        formula, _ = make_symbol_loose(formula)
    candidates = simple_subformulas(formula)

    if case is None:
        if loose:
            click.echo(print_formula(formula))
        for position, simple in enumerate(candidates):
            path = ".".join(str(i) for i in simple.path) or "root"
            click.echo(f"{position} {path}: {print_formula(simple.formula)}")
        return
    if index >= len(candidates):
        raise click.BadParameter(
            f"PHI has {len(candidates)} simple subformulas", param_hint="--index"
        )
    partner = accordion_source(formula, candidates[index].path, AccordionCase[case.upper()])
    click.echo(print_formula(partner))
