"""
Structure document schemas for JSON input and output.
"""

from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator

from folio.core.config import settings


def _element(value: Any) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise ValueError(f"universe elements must be strings or numbers, got {value!r}")
    text = str(value)
    if settings.element_delimiter in text:
        raise ValueError(
            f"element {text!r} contains the reserved delimiter {settings.element_delimiter!r}"
        )
    return text


class RelationDocument(BaseModel):
    """Schema for one interpreted relation."""

    arity: list[str] = Field(..., min_length=1, description="Sort of each argument")
    tuples: list[list[str]] = Field(default_factory=list, description="Member tuples")

    @field_validator("tuples", mode="before")
    @classmethod
    def coerce_elements(cls, value):
        """Accept numeric elements and store them as strings."""
        return [[_element(e) for e in row] for row in value]

    @model_validator(mode="after")
    def check_tuple_lengths(self):
        """Every tuple has one element per argument."""
        for row in self.tuples:
            if len(row) != len(self.arity):
                raise ValueError(
                    f"tuple {row} has length {len(row)}, arity is {len(self.arity)}"
                )
        return self


class StructureDocument(BaseModel):
    """Schema for a structure file."""

    sorts: list[str] = Field(default_factory=list, description="Declared sorts")
    universes: dict[str, list[str]] = Field(..., description="Elements of each sort")
    relations: dict[str, RelationDocument] = Field(
        default_factory=dict, description="Relation interpretations"
    )

    @field_validator("universes", mode="before")
    @classmethod
    def coerce_universes(cls, value):
        """Accept numeric elements and store them as strings."""
        return {sort: [_element(e) for e in elements] for sort, elements in value.items()}

    @model_validator(mode="after")
    def check_sorts(self):
        """Declared sorts, universes and arities must agree."""
        declared = set(self.sorts) or set(self.universes)
        if set(self.universes) - declared:
            raise ValueError(
                f"universes given for undeclared sorts {sorted(set(self.universes) - declared)}"
            )
        for name, relation in self.relations.items():
            unknown = set(relation.arity) - declared
            if unknown:
                raise ValueError(f"relation {name} uses undeclared sorts {sorted(unknown)}")
        return self
