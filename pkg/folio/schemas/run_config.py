"""
Run configuration schema shared by the CLI commands.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from folio.core.config import settings


class EngineEnum(str, Enum):
    """Evaluation engine enumeration."""

    NAIVE = "naive"
    BOUNDED = "bounded"
    FPT = "fpt"


class OutputFormatEnum(str, Enum):
    """Output format enumeration."""

    TEXT = "text"
    JSON = "json"


class NormalFormEnum(str, Enum):
    """Normal form enumeration for `folio normalize`."""

    NNF = "nnf"
    ORG = "org"
    LAY = "lay"


class RunConfig(BaseModel):
    """Schema for one CLI invocation."""

    command: str = Field(..., description="Subcommand name")
    query_path: Optional[str] = Field(None, description="Formula file")
    db_path: Optional[str] = Field(None, description="Structure file (JSON) or CSV directory")
    engine: EngineEnum = Field(EngineEnum.FPT, description="Evaluation engine")
    output_format: OutputFormatEnum = Field(OutputFormatEnum.TEXT, description="Output format")
    max_ast_nodes: int = Field(
        default_factory=lambda: settings.max_ast_nodes, gt=0, description="AST node limit"
    )
    max_treewidth_vertices: int = Field(
        default_factory=lambda: settings.max_treewidth_vertices,
        gt=0,
        description="Vertex limit for exact treewidth search",
    )
    seed: int = Field(default_factory=lambda: settings.seed, description="Random seed")
