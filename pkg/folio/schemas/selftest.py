"""
Self-test report schemas.
"""

from typing import Any, Optional

from pydantic import BaseModel, Field, computed_field


class Counterexample(BaseModel):
    """Schema for the first failing case of a suite."""

    case: int = Field(..., ge=0, description="Index of the failing case")
    check: str = Field(..., description="Property that failed")
    formula: Optional[str] = Field(None, description="Formula of the case, printed")
    structure: Optional[dict[str, Any]] = Field(None, description="Structure document")
    detail: Optional[str] = Field(None, description="What was observed")


class SuiteReport(BaseModel):
    """Schema for one randomized suite."""

    name: str = Field(..., description="Suite name")
    cases: int = Field(0, ge=0, description="Cases run")
    failures: int = Field(0, ge=0, description="Cases that violated a property")
    counterexample: Optional[Counterexample] = Field(
        None, description="First failing case, if any"
    )
    outcomes: Optional[dict[str, int]] = Field(
        None, description="How often each outcome occurred, for suites that track them"
    )

    @computed_field
    @property
    def passed(self) -> bool:
        return self.failures == 0


class SelftestReport(BaseModel):
    """Schema for `folio selftest` output."""

    seed: int = Field(..., description="Seed every suite was derived from")
    cases: int = Field(..., ge=0, description="Cases per suite")
    suites: list[SuiteReport] = Field(default_factory=list, description="Per-suite results")

    @computed_field
    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)
