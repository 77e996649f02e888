"""
Rewrite step schemas for transformation traces.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class RewriteRuleEnum(str, Enum):
    """Syntactic transformation enumeration."""

    ALPHA = "alpha"  # associativity and commutativity
    BETA = "beta"  # quantifier over a matching junction
    GAMMA = "gamma"  # quantifier scope shrinking
    DELTA = "delta"  # distributivity
    EPSILON = "epsilon"  # De Morgan, plus double negation
    REPLACEMENT = "replacement"


class RewriteDirectionEnum(str, Enum):
    """Direction in which an equivalence is applied."""

    FORWARD = "forward"
    BACKWARD = "backward"


class RewriteStep(BaseModel):
    """Schema for a single transformation applied at a subformula path."""

    rule: RewriteRuleEnum = Field(..., description="Transformation applied")
    path: list[int] = Field(
        default_factory=list, description="Child indices from the root to the rewritten node"
    )
    direction: RewriteDirectionEnum = Field(
        RewriteDirectionEnum.FORWARD, description="Left-to-right or right-to-left reading"
    )
    operation: Optional[str] = Field(
        None,
        description="Sub-rule: 'commute' or 'associate' for alpha, 'double_negation' for epsilon",
    )
    symbol: Optional[str] = Field(
        None, description="New relation symbol (replacement only)"
    )
    phase: Optional[str] = Field(
        None, description="Normalization phase that recorded the step"
    )
