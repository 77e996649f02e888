"""
Structure model: per-sort finite universes and relation interpretations.
"""

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from folio.core.exceptions import StructureError
from folio.models.formula import Variable
from folio.models.signature import Signature

Element = str
Row = tuple[Element, ...]
Assignment = Mapping[Variable, Element]


@dataclass(frozen=True, eq=False)
class Structure:
    """
    Finite multi-sorted structure.

    Universes keep their insertion order (duplicates removed) so that every
    enumeration over a structure is deterministic.
    """

    signature: Signature
    universes: Mapping[str, tuple[Element, ...]]
    relations: Mapping[str, frozenset[Row]]

    def __post_init__(self) -> None:
        universes = {
            sort: tuple(dict.fromkeys(str(e) for e in elements))
            for sort, elements in self.universes.items()
        }
        missing_sorts = set(self.signature.sorts) - set(universes)
        if missing_sorts:
            raise StructureError(
                f"no universe given for sorts {sorted(missing_sorts)}",
                context={"sorts": sorted(missing_sorts)},
            )

        relations: dict[str, frozenset[Row]] = {}
        for symbol, arity in self.signature.relations.items():
            if symbol not in self.relations:
                raise StructureError(
                    f"relation {symbol} is not interpreted", context={"relation": symbol}
                )
            members = [set(universes[sort]) for sort in arity]
            rows = set()
            for row in self.relations[symbol]:
                row = tuple(str(e) for e in row)
                if len(row) != len(arity):
                    raise StructureError(
                        f"tuple {row} of {symbol} has length {len(row)}, expected {len(arity)}",
                        context={"relation": symbol},
                    )
                for element, member in zip(row, members):
                    if element not in member:
                        raise StructureError(
                            f"tuple {row} of {symbol} leaves the universe of its sort",
                            context={"relation": symbol, "element": element},
                        )
                rows.add(row)
            relations[symbol] = frozenset(rows)

        extra = set(self.relations) - set(self.signature.relations)
        if extra:
            raise StructureError(
                f"relations {sorted(extra)} are not in the signature",
                context={"relations": sorted(extra)},
            )

        object.__setattr__(self, "universes", MappingProxyType(universes))
        object.__setattr__(self, "relations", MappingProxyType(relations))

    @classmethod
    def build(
        cls,
        signature: Signature,
        universes: Mapping[str, Iterable[Element]],
        relations: Optional[Mapping[str, Iterable[Iterable[Element]]]] = None,
    ) -> "Structure":
        """
        Build a structure, interpreting omitted symbols as empty.

        Args:
            signature: Signature of the structure
            universes: Sort to elements
            relations: Symbol to tuples; symbols not listed are empty

        Returns:
            Validated structure
        """
        relations = relations or {}
        return cls(
            signature=signature,
            universes={sort: tuple(elements) for sort, elements in universes.items()},
            relations={
                symbol: frozenset(tuple(row) for row in relations.get(symbol, ()))
                for symbol in signature.relations
            },
        )

    def universe(self, sort: str) -> tuple[Element, ...]:
        try:
            return self.universes[sort]
        except KeyError:
            raise StructureError(
                f"structure has no universe for sort {sort}", context={"sort": sort}
            ) from None

    def relation(self, symbol: str) -> frozenset[Row]:
        try:
            return self.relations[symbol]
        except KeyError:
            raise StructureError(
                f"structure does not interpret {symbol}", context={"relation": symbol}
            ) from None

    def full_relation(self, arity: tuple[str, ...]) -> frozenset[Row]:
        """All tuples of the product of the universes of the given sorts."""
        return frozenset(itertools.product(*(self.universe(s) for s in arity)))

    def assignments(self, variables: Iterable[Variable]) -> Iterator[dict[Variable, Element]]:
        """Every assignment of the given variables into their universes."""
        ordered = list(variables)
        for values in itertools.product(*(self.universe(v.sort) for v in ordered)):
            yield dict(zip(ordered, values))

    def replace(
        self,
        signature: Optional[Signature] = None,
        universes: Optional[Mapping[str, Iterable[Element]]] = None,
        relations: Optional[Mapping[str, Iterable[Row]]] = None,
    ) -> "Structure":
        """Copy with some components overridden; relations are merged by symbol."""
        signature = signature or self.signature
        merged_universes = dict(self.universes)
        if universes:
            merged_universes.update({s: tuple(e) for s, e in universes.items()})
        merged_relations = {
            s: rows for s, rows in self.relations.items() if s in signature.relations
        }
        if relations:
            merged_relations.update({s: frozenset(r) for s, r in relations.items()})
        return Structure(
            signature=signature, universes=merged_universes, relations=merged_relations
        )

    @property
    def measure(self) -> int:
        """Largest universe size over all sorts."""
        return max((len(u) for u in self.universes.values()), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return (
            self.signature == other.signature
            and {s: set(u) for s, u in self.universes.items()}
            == {s: set(u) for s, u in other.universes.items()}
            and dict(self.relations) == dict(other.relations)
        )

    __hash__ = None  # type: ignore[assignment]
