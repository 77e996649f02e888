"""
Signature model: sorts and relation symbols with sorted arities.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from folio.core.exceptions import SignatureError
from folio.models.formula import DEFAULT_SORT


@dataclass(frozen=True, eq=False)
class Signature:
    """Relational signature over a finite set of sorts."""

    sorts: frozenset[str]
    relations: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        frozen = {name: tuple(arity) for name, arity in self.relations.items()}
        for name, arity in frozen.items():
            if not arity:
                raise SignatureError(
                    f"relation {name} must have arity at least 1",
                    context={"relation": name},
                )
            unknown = set(arity) - set(self.sorts)
            if unknown:
                raise SignatureError(
                    f"relation {name} uses undeclared sorts {sorted(unknown)}",
                    context={"relation": name},
                )
        object.__setattr__(self, "sorts", frozenset(self.sorts))
        object.__setattr__(self, "relations", MappingProxyType(frozen))

    @classmethod
    def one_sorted(cls, arities: Mapping[str, int], sort: str = DEFAULT_SORT) -> "Signature":
        """
        Build a one-sorted signature.

        Args:
            arities: Relation name to number of arguments
            sort: Name of the single sort

        Returns:
            Signature with every argument of the given sort
        """
        return cls(
            sorts=frozenset({sort}),
            relations={name: (sort,) * n for name, n in arities.items()},
        )

    def arity(self, symbol: str) -> tuple[str, ...]:
        try:
            return self.relations[symbol]
        except KeyError:
            raise SignatureError(
                f"unknown relation symbol {symbol}", context={"relation": symbol}
            ) from None

    def has(self, symbol: str) -> bool:
        return symbol in self.relations

    def extend(self, relations: Mapping[str, tuple[str, ...]]) -> "Signature":
        """Signature with additional (or redefined) relation symbols."""
        merged = dict(self.relations)
        merged.update(relations)
        sorts = set(self.sorts)
        for arity in relations.values():
            sorts.update(arity)
        return Signature(sorts=frozenset(sorts), relations=merged)

    def restrict(self, symbols) -> "Signature":
        """Signature keeping only the given symbols (sorts are kept)."""
        keep = set(symbols)
        return Signature(
            sorts=self.sorts,
            relations={n: a for n, a in self.relations.items() if n in keep},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self.sorts == other.sorts and dict(self.relations) == dict(other.relations)

    def __hash__(self) -> int:
        return hash((self.sorts, frozenset(self.relations.items())))
