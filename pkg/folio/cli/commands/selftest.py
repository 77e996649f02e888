"""
`folio selftest`: seeded randomized invariant suites.
"""

import json
import logging
from typing import Optional

import click

from folio.cli.dependencies import get_run_config
from folio.core.error_handlers import handle_cli_errors
from folio.core.exceptions import EXIT_TRUE, EXIT_VIOLATION
from folio.schemas.run_config import OutputFormatEnum
from folio.services.selftest_service import SUITE_NAMES, run_selftest

logger = logging.getLogger(__name__)


@click.command()
@click.option("--seed", type=int, default=None, help="Base seed (default FOLIO_SEED).")
@click.option(
    "--cases",
    type=click.IntRange(min=0),
    default=None,
    help="Cases per suite (default FOLIO_SELFTEST_CASES).",
)
@click.option(
    "--universe-max",
    type=click.IntRange(min=1),
    default=None,
    help="Largest random universe (default FOLIO_SELFTEST_UNIVERSE_MAX).",
)
@click.option(
    "--suite",
    "suite_names",
    type=click.Choice(SUITE_NAMES),
    multiple=True,
    help="Run only this suite; repeat for several (default: all).",
)
@click.option(
    "--inject-mutant",
    is_flag=True,
    help="Swap the variable minimization for a wrong rewriting to exercise failure reporting.",
)
@click.option("--json", "as_json", is_flag=True, help="Emit the SelftestReport as JSON.")
@click.pass_context
@handle_cli_errors
def selftest(
    ctx: click.Context,
    seed: Optional[int],
    cases: Optional[int],
    universe_max: Optional[int],
    suite_names: tuple[str, ...],
    inject_mutant: bool,
    as_json: bool,
) -> None:
    """Run the randomized equivalence and bound suites; exit 4 on any failure."""
    config = get_run_config(
        ctx,
        "selftest",
        seed=seed,
        output_format=OutputFormatEnum.JSON if as_json else OutputFormatEnum.TEXT,
    )
    report = run_selftest(
        seed=config.seed,
        cases=cases,
        inject_mutant=inject_mutant,
        universe_max=universe_max,
        suites=suite_names or None,
    )

    if config.output_format is OutputFormatEnum.JSON:
        click.echo(report.model_dump_json(indent=2, exclude_none=True))
    else:
        if report.cases == 0:
            click.echo("warning: zero cases requested, nothing was checked", err=True)
        click.echo(f"seed: {report.seed}")
        for suite in report.suites:
            status = "ok" if suite.passed else "FAILED"
            click.echo(f"{suite.name}: {suite.cases} cases, {suite.failures} failures, {status}")
            if suite.outcomes:
                counts = ", ".join(f"{label}={n}" for label, n in suite.outcomes.items())
                click.echo(f"  outcomes: {counts}")
            example = suite.counterexample
            if example is not None:
                click.echo(f"  case {example.case}: {example.check}")
                if example.formula:
                    click.echo(f"  formula: {example.formula}")
                if example.structure is not None:
                    click.echo(f"  structure: {json.dumps(example.structure, sort_keys=True)}")
                if example.detail:
                    click.echo(f"  detail: {example.detail}")

    logger.info("Selftest finished", extra={"seed": report.seed, "passed": report.passed})
    ctx.exit(EXIT_TRUE if report.passed else EXIT_VIOLATION)
