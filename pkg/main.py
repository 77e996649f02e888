"""
Command-line entry point for folio.
Configures structured logging from settings and dispatches to the click group.
"""

from folio.cli import cli
from folio.core.config import settings
from folio.core.logging import get_logger, setup_logging

# Initialize logging
setup_logging(
    log_level=settings.log_level,
    log_dir=settings.log_dir,
    app_name=settings.app_name.lower().replace(" ", "_"),
    log_format=settings.log_format,
    date_format=settings.log_date_format,
    message_format=settings.log_message_format,
)

logger = get_logger(__name__)


def main() -> None:
    """Run the folio command group."""
    logger.debug(
        "Starting folio",
        extra={"version": settings.app_version, "environment": settings.environment},
    )
    cli(prog_name="folio")


if __name__ == "__main__":
    main()
