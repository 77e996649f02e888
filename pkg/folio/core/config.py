"""
Core configuration module for folio.
Loads environment variables from .env file based on FOLIO_ENVIRONMENT variable.
"""

import os

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


def get_env_file() -> str:
    """
    Determine which .env file to load based on FOLIO_ENVIRONMENT variable.

    Priority:
    1. FOLIO_ENVIRONMENT variable (e.g., 'development', 'test', 'ci')
    2. Falls back to .env if no environment file exists

    Returns:
        Path to the .env file to load
    """
    environment = os.getenv("FOLIO_ENVIRONMENT", "development")
    env_file = f".env.{environment}"

    if os.path.exists(env_file):
        return env_file
    return ".env"


class Settings(BaseSettings):
    """Application settings loaded from FOLIO_* environment variables."""

    # Environment
    environment: str = "development"

    # Application Configuration
    app_name: str = "folio"
    app_version: str = "1.0.0"

    # Logging Configuration (console output goes to stderr)
    log_level: str = "WARNING"
    log_dir: str | None = None
    log_format: str = "text"  # "json" or "text"
    log_date_format: str = "%Y-%m-%d %H:%M:%S"
    log_message_format: str = "%(timestamp)s %(level)s %(name)s %(message)s"

    # Randomized suites
    seed: int = 20240611
    selftest_cases: int = Field(default=200, ge=0)
    selftest_universe_max: int = Field(default=3, ge=1)

    # Size limits
    max_ast_nodes: int = Field(default=64, gt=0)
    max_treewidth_vertices: int = Field(default=20, gt=0)

    # Gadget encodings
    element_delimiter: str = "|"
    fresh_symbol_prefix: str = "__acc_"
    filler_element: str = "*"

    model_config = SettingsConfigDict(
        env_prefix="FOLIO_",
        env_file=get_env_file(),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Create a global settings instance
settings = Settings()
