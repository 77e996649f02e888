"""
RelationTable model: satisfying assignments of a subformula as a relation.
"""

from dataclasses import dataclass

from folio.core.exceptions import PreconditionError
from folio.models.formula import Variable
from folio.models.structure import Row


@dataclass(frozen=True)
class RelationTable:
    """Rows over a schema of distinct variables; the empty schema is the boolean case."""

    schema: tuple[Variable, ...]
    rows: frozenset[Row]

    def __post_init__(self) -> None:
        if len(set(self.schema)) != len(self.schema):
            raise PreconditionError("table schema repeats a variable")

    @property
    def is_true(self) -> bool:
        """A 0-ary table is true when it holds the empty row."""
        return bool(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, variable: Variable) -> int:
        return self.schema.index(variable)

    def as_assignments(self) -> list[dict[Variable, str]]:
        return [dict(zip(self.schema, row)) for row in sorted(self.rows)]
