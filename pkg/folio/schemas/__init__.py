"""
Pydantic schemas initialization.
"""

from folio.schemas.report import (
    AnalysisReport,
    EvaluationStats,
    FormulaSummary,
    NodeThickness,
)
from folio.schemas.rewrite import RewriteDirectionEnum, RewriteRuleEnum, RewriteStep
from folio.schemas.run_config import EngineEnum, NormalFormEnum, OutputFormatEnum, RunConfig
from folio.schemas.selftest import Counterexample, SelftestReport, SuiteReport
from folio.schemas.structure import RelationDocument, StructureDocument

__all__ = [
    "AnalysisReport",
    "Counterexample",
    "EngineEnum",
    "EvaluationStats",
    "FormulaSummary",
    "NodeThickness",
    "NormalFormEnum",
    "OutputFormatEnum",
    "RelationDocument",
    "RewriteDirectionEnum",
    "RewriteRuleEnum",
    "RewriteStep",
    "RunConfig",
    "SelftestReport",
    "StructureDocument",
    "SuiteReport",
]
