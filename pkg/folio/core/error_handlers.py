"""
Exception handlers that turn folio exceptions into CLI exit codes.
"""

import functools
import logging
from typing import Callable, TypeVar

import click
from pydantic import ValidationError

from folio.core.error_utils import categorize_exception, clip_dict, extract_error_context
from folio.core.exceptions import EXIT_ERROR, EXIT_LIMIT, FolioError

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable)


def folio_exception_handler(exc: FolioError) -> int:
    """
    Handle folio exceptions.

    Args:
        exc: Folio exception

    Returns:
        Process exit code
    """
    logger.error(
        f"{exc.category} error: {exc.detail}",
        extra={
            "category": exc.category,
            "exit_code": exc.exit_code,
            "context": clip_dict(exc.context) if exc.context else {},
        },
    )
    click.echo(f"error: {exc.detail}", err=True)
    return exc.exit_code


def validation_exception_handler(exc: ValidationError) -> int:
    """
    Handle pydantic validation errors raised while reading input documents.

    Args:
        exc: Validation exception

    Returns:
        Process exit code
    """
    logger.warning(
        "Validation error",
        extra={"error_count": exc.error_count(), "category": "validation"},
    )
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    click.echo(f"error: invalid document at {location or '<root>'}: {first['msg']}", err=True)
    return EXIT_ERROR


def general_exception_handler(exc: Exception) -> int:
    """
    Handle all other exceptions.

    Args:
        exc: Exception

    Returns:
        Process exit code
    """
    category = categorize_exception(exc)
    logger.error(
        "Unhandled exception",
        exc_info=exc,
        extra={"category": category, **extract_error_context(exc)},
    )
    if category == "limit":
        click.echo("error: input too deeply nested", err=True)
        return EXIT_LIMIT
    if category == "io":
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    click.echo("error: internal error", err=True)
    return EXIT_ERROR


def handle_cli_errors(func: F) -> F:
    """
    Decorate a click command so that exceptions become exit codes.

    Args:
        func: Command callback

    Returns:
        Wrapped callback
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.exceptions.Exit:
            raise
        except click.ClickException:
            raise
        except FolioError as exc:
            raise click.exceptions.Exit(folio_exception_handler(exc))
        except ValidationError as exc:
            raise click.exceptions.Exit(validation_exception_handler(exc))
        except Exception as exc:  # noqa: BLE001
            raise click.exceptions.Exit(general_exception_handler(exc))

    return wrapper  # type: ignore[return-value]
