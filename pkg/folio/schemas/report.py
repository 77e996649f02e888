"""
Report schemas: thickness analysis and evaluation statistics.
"""

from typing import Optional

from pydantic import BaseModel, Field, model_validator


class NodeThickness(BaseModel):
    """Schema for the measures of one quantifier block of lay(phi)."""

    path: list[int] = Field(..., description="Path of the block inside lay(phi)")
    local: int = Field(..., ge=1, description="Local thickness of the block")
    quantified: int = Field(..., ge=1, description="Quantified thickness of the block")


class AnalysisReport(BaseModel):
    """Schema for the computed measures of a formula."""

    formula: str = Field(..., description="Analyzed formula, printed")
    thickness: int = Field(..., ge=0, description="Thickness of the formula")
    width_before: int = Field(..., ge=0, description="Width of the input formula")
    width_after: int = Field(..., ge=0, description="Width after variable minimization")
    variables_before: int = Field(..., ge=0, description="Distinct variables in the input")
    variables_used_after: int = Field(
        ..., ge=0, description="Distinct variables after variable minimization"
    )
    per_node: list[NodeThickness] = Field(
        default_factory=list, description="Per-block local and quantified thickness"
    )
    max_table_rows: Optional[int] = Field(
        None, description="Largest intermediate table when the report comes from evaluation"
    )

    @model_validator(mode="after")
    def check_thickness_dominates(self):
        """Thickness bounds the local thickness of every recorded block."""
        for node in self.per_node:
            if node.local > self.thickness:
                raise ValueError(
                    f"local thickness {node.local} at {node.path} "
                    f"exceeds thickness {self.thickness}"
                )
        return self


class EvaluationStats(BaseModel):
    """Schema for evaluation statistics (`folio eval --stats`)."""

    engine: str = Field(..., description="Engine that produced the result")
    result: bool = Field(..., description="Truth value of the sentence")
    max_table_rows: int = Field(0, ge=0, description="Largest intermediate table")
    node_count: int = Field(0, ge=0, description="Formula nodes evaluated")
    wall_ms: float = Field(0.0, ge=0, description="Wall-clock time in milliseconds")
    thickness: Optional[int] = Field(None, description="Thickness (fpt engine only)")


class FormulaSummary(BaseModel):
    """Schema for `folio parse --json`."""

    formula: str = Field(..., description="Formula, printed")
    free: list[str] = Field(default_factory=list, description="Free variables, sorted")
    width: int = Field(..., ge=0, description="Width of the formula")
    variables: int = Field(..., ge=0, description="Distinct variables")
    nodes: int = Field(..., ge=1, description="AST nodes")
    relations: dict[str, list[str]] = Field(
        default_factory=dict, description="Inferred signature: symbol to argument sorts"
    )
