"""
Structure repository for reading and writing structure files.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Union

from folio.core.exceptions import StructureError
from folio.models.signature import Signature
from folio.models.structure import Structure
from folio.schemas.structure import RelationDocument, StructureDocument

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# Optional file of a CSV directory listing "sort,element" rows.
UNIVERSES_FILE = "_universes.csv"


class StructureRepository:
    """Repository for Structure file access (JSON documents and CSV directories)."""

    def __init__(self, base_dir: PathLike | None = None):
        self.base_dir = Path(base_dir) if base_dir is not None else None

    def _resolve(self, location: PathLike) -> Path:
        path = Path(location)
        if self.base_dir is not None and not path.is_absolute():
            path = self.base_dir / path
        return path

    @staticmethod
    def from_document(document: StructureDocument) -> Structure:
        """
        Convert a validated structure document into a Structure.

        Args:
            document: Structure document

        Returns:
            Structure over the signature the document declares

        Raises:
            StructureError: a tuple leaves the universe of its sort
        """
        sorts = frozenset(document.sorts) or frozenset(document.universes)
        signature = Signature(
            sorts=sorts,
            relations={name: tuple(r.arity) for name, r in document.relations.items()},
        )
        universes = {sort: document.universes.get(sort, []) for sort in sorts}
        relations = {name: r.tuples for name, r in document.relations.items()}
        return Structure.build(signature, universes, relations)

    @staticmethod
    def to_document(structure: Structure) -> StructureDocument:
        """
        Structure as a document with sorted sorts, symbols and tuples.

        Built without validation: a Structure is already consistent, and gadget
        outputs carry composite elements joined by the reserved delimiter.
        """
        signature = structure.signature
        return StructureDocument.model_construct(
            sorts=sorted(signature.sorts),
            universes={sort: list(structure.universe(sort)) for sort in sorted(signature.sorts)},
            relations={
                symbol: RelationDocument.model_construct(
                    arity=list(signature.arity(symbol)),
                    tuples=[list(row) for row in sorted(structure.relation(symbol))],
                )
                for symbol in sorted(signature.relations)
            },
        )

    def load(self, location: PathLike) -> Structure:
        """
        Load a structure from a JSON file or from a directory of CSV files.

        Args:
            location: File or directory path

        Returns:
            Structure
        """
        path = self._resolve(location)
        if path.is_dir():
            return self.load_csv_directory(path)
        return self.load_json(path)

    def load_json(self, location: PathLike) -> Structure:
        """Load a structure JSON document."""
        path = self._resolve(location)
        text = path.read_text(encoding="utf-8")
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StructureError(
                f"structure file is not valid JSON: {exc.msg}",
                context={"path": str(path), "line": exc.lineno},
            ) from None
        structure = self.from_document(StructureDocument.model_validate(payload))
        logger.info(
            "Loaded structure",
            extra={
                "path": str(path),
                "sorts": len(structure.signature.sorts),
                "relations": len(structure.signature.relations),
                "measure": structure.measure,
            },
        )
        return structure

    def load_csv_directory(self, location: PathLike) -> Structure:
        """
        Load a structure from a directory with one CSV file per relation.

        Each `<symbol>.csv` starts with a header naming the sort of every column;
        the remaining rows are the tuples. An optional `_universes.csv` lists
        "sort,element" rows; without it every universe is the set of elements
        that occur in columns of that sort.

        Args:
            location: Directory path

        Returns:
            Structure

        Raises:
            StructureError: a relation file has no header or a ragged row
        """
        directory = self._resolve(location)
        universes: dict[str, list[str]] = {}
        universes_file = directory / UNIVERSES_FILE
        declared = universes_file.exists()
        if declared:
            for row in self._read_rows(universes_file):
                if len(row) != 2:
                    raise StructureError(
                        "universe rows must be 'sort,element'",
                        context={"path": str(universes_file), "row": row},
                    )
                universes.setdefault(row[0], []).append(row[1])

        relations: dict[str, RelationDocument] = {}
        for path in sorted(directory.glob("*.csv")):
            if path.name == UNIVERSES_FILE:
                continue
            rows = self._read_rows(path)
            if not rows:
                raise StructureError(
                    f"relation file {path.name} has no header", context={"path": str(path)}
                )
            header, tuples = rows[0], rows[1:]
            for row in tuples:
                if len(row) != len(header):
                    raise StructureError(
                        f"row {row} of {path.name} has {len(row)} fields, header has {len(header)}",
                        context={"path": str(path)},
                    )
                if not declared:
                    for sort, element in zip(header, row):
                        universes.setdefault(sort, []).append(element)
            for sort in header:
                universes.setdefault(sort, [])
            relations[path.stem] = RelationDocument(arity=header, tuples=tuples)

        document = StructureDocument(
            sorts=sorted(universes),
            universes={sort: list(dict.fromkeys(e)) for sort, e in universes.items()},
            relations=relations,
        )
        structure = self.from_document(document)
        logger.info(
            "Loaded CSV structure",
            extra={"path": str(directory), "relations": len(relations)},
        )
        return structure

    @staticmethod
    def _read_rows(path: Path) -> list[list[str]]:
        with path.open(newline="", encoding="utf-8") as handle:
            return [[cell.strip() for cell in row] for row in csv.reader(handle) if row]

    def dumps(self, structure: Structure) -> str:
        """Structure as an indented JSON document."""
        return self.to_document(structure).model_dump_json(indent=2)

    def save(self, structure: Structure, location: PathLike) -> Path:
        """
        Write a structure JSON document.

        Args:
            structure: Structure to write
            location: Target file

        Returns:
            Path written
        """
        path = self._resolve(location)
        path.write_text(self.dumps(structure) + "\n", encoding="utf-8")
        logger.info("Saved structure", extra={"path": str(path)})
        return path
