"""
Engine service: bottom-up relational evaluation of formulas and the thickness
based model-checking pipeline.
"""

import itertools
import logging
import time
from typing import Iterable, Optional

from folio.core.exceptions import (
    EvaluationError,
    InvariantViolation,
    PreconditionError,
    SignatureError,
)
from folio.models.formula import (
    And,
    Atom,
    Formula,
    Not,
    Or,
    Quant,
    Quantifier,
    Variable,
    node_count,
    variables,
)
from folio.models.relation_table import RelationTable
from folio.models.structure import Structure
from folio.schemas.report import AnalysisReport, EvaluationStats
from folio.schemas.run_config import EngineEnum
from folio.services.formula_service import is_sentence
from folio.services.semantics_service import naive_eval
from folio.services.thickness_service import analyze, minimize_variables

logger = logging.getLogger(__name__)


def _schema(members: Iterable[Variable]) -> tuple[Variable, ...]:
    return tuple(sorted(members))


def full_product_table(structure: Structure, schema: Iterable[Variable]) -> RelationTable:
    """
    Every assignment of the schema variables into their universes.

    The empty schema gives the table holding the single empty row.
    """
    schema = tuple(schema)
    rows = itertools.product(*(structure.universe(v.sort) for v in schema))
    return RelationTable(schema=schema, rows=frozenset(rows))


class BoundedEvaluator:
    """
    Evaluates a formula bottom-up, one table per node over the node's free variables.

    Atoms filter their relation; negation complements against the full product
    of the schema; conjunction is a natural join; disjunction pads both sides to
    the common schema and unites them; exists projects; forall is
    complement-project-complement.
    """

    def __init__(self, structure: Structure):
        self.structure = structure
        self.max_table_rows = 0
        self.node_count = 0

    def _record(self, table: RelationTable) -> RelationTable:
        self.node_count += 1
        self.max_table_rows = max(self.max_table_rows, len(table))
        return table

    def evaluate(self, phi: Formula) -> RelationTable:
        if isinstance(phi, Atom):
            return self._record(self._atom(phi))
        if isinstance(phi, Not):
            return self._record(self._complement(self.evaluate(phi.child)))
        if isinstance(phi, And):
            return self._record(self._join(self.evaluate(phi.left), self.evaluate(phi.right)))
        if isinstance(phi, Or):
            return self._record(self._union(self.evaluate(phi.left), self.evaluate(phi.right)))
        return self._record(self._quantify(phi, self.evaluate(phi.body)))

    def _atom(self, atom: Atom) -> RelationTable:
        signature = self.structure.signature
        if not signature.has(atom.symbol):
            raise SignatureError(
                f"structure does not interpret {atom.symbol}", context={"relation": atom.symbol}
            )
        if signature.arity(atom.symbol) != tuple(v.sort for v in atom.args):
            raise EvaluationError(
                f"sort mismatch in atom {atom.symbol}", context={"relation": atom.symbol}
            )
        schema = _schema(atom.free)
        first = {v: atom.args.index(v) for v in schema}
        rows = set()
        for row in self.structure.relation(atom.symbol):
            if all(row[i] == row[first[v]] for i, v in enumerate(atom.args)):
                rows.add(tuple(row[first[v]] for v in schema))
        return RelationTable(schema=schema, rows=frozenset(rows))

    def _complement(self, table: RelationTable) -> RelationTable:
        full = full_product_table(self.structure, table.schema)
        return RelationTable(schema=table.schema, rows=full.rows - table.rows)

    def _join(self, left: RelationTable, right: RelationTable) -> RelationTable:
        schema = _schema(set(left.schema) | set(right.schema))
        common = [v for v in left.schema if v in right.schema]
        left_key = [left.column(v) for v in common]
        right_key = [right.column(v) for v in common]
        index: dict[tuple, list[tuple]] = {}
        for row in right.rows:
            index.setdefault(tuple(row[i] for i in right_key), []).append(row)

        rows = set()
        for row in left.rows:
            for match in index.get(tuple(row[i] for i in left_key), ()):
                values = dict(zip(left.schema, row))
                values.update(zip(right.schema, match))
                rows.add(tuple(values[v] for v in schema))
        return RelationTable(schema=schema, rows=frozenset(rows))

    def _pad(self, table: RelationTable, schema: tuple[Variable, ...]) -> RelationTable:
        missing = [v for v in schema if v not in table.schema]
        if not missing:
            return self._reorder(table, schema)
        return self._join(table, full_product_table(self.structure, missing))

    @staticmethod
    def _reorder(table: RelationTable, schema: tuple[Variable, ...]) -> RelationTable:
        if table.schema == schema:
            return table
        columns = [table.column(v) for v in schema]
        return RelationTable(
            schema=schema, rows=frozenset(tuple(row[i] for i in columns) for row in table.rows)
        )

    def _union(self, left: RelationTable, right: RelationTable) -> RelationTable:
        schema = _schema(set(left.schema) | set(right.schema))
        rows = self._pad(left, schema).rows | self._pad(right, schema).rows
        return RelationTable(schema=schema, rows=rows)

    def _project(self, table: RelationTable, drop: set[Variable]) -> RelationTable:
        schema = tuple(v for v in table.schema if v not in drop)
        columns = [table.column(v) for v in schema]
        return RelationTable(
            schema=schema, rows=frozenset(tuple(row[i] for i in columns) for row in table.rows)
        )

    def _quantify(self, phi: Quant, body: RelationTable) -> RelationTable:
        schema = _schema(phi.free)
        vacuous = [v for v in phi.variables if v not in body.schema]
        if any(not self.structure.universe(v.sort) for v in vacuous):
            # a variable over an empty sort: exists is false and forall is true
            if phi.quantifier is Quantifier.EXISTS:
                return RelationTable(schema=schema, rows=frozenset())
            return full_product_table(self.structure, schema)

        drop = set(phi.variables)
        if phi.quantifier is Quantifier.EXISTS:
            return self._project(body, drop)
        return self._complement(self._project(self._complement(body), drop))


def bounded_var_eval(structure: Structure, phi: Formula) -> RelationTable:
    """
    Table of the assignments of free_vars(phi) that satisfy phi.

    Args:
        structure: Finite structure over phi's signature
        phi: Formula

    Returns:
        RelationTable over the sorted free variables; for a sentence a 0-ary
        table that is nonempty iff the structure satisfies phi
    """
    return BoundedEvaluator(structure).evaluate(phi)


def _has_empty_sort(structure: Structure, phi: Formula) -> bool:
    return any(not structure.universe(v.sort) for v in variables(phi))


def _fpt_evaluate(
    structure: Structure, phi: Formula
) -> tuple[bool, AnalysisReport, BoundedEvaluator]:
    if not is_sentence(phi):
        raise PreconditionError(
            "model checking expects a sentence",
            context={"free": sorted(str(v) for v in phi.free)},
        )
    minimized = minimize_variables(phi)
    report = analyze(phi, minimized)

    evaluator = BoundedEvaluator(structure)
    if _has_empty_sort(structure, phi):
        # the rewriting drops vacuous quantifiers, which is only sound over nonempty universes
        logger.warning("Empty universe in use, evaluating the input sentence directly")
        result = evaluator.evaluate(phi).is_true
    else:
        result = evaluator.evaluate(minimized).is_true
        bound = max(1, structure.measure ** report.thickness)
        if evaluator.max_table_rows > bound:
            raise InvariantViolation(
                f"intermediate table has {evaluator.max_table_rows} rows, bound is {bound}",
                context={"thickness": report.thickness, "measure": structure.measure},
            )

    report = report.model_copy(update={"max_table_rows": evaluator.max_table_rows})
    logger.info(
        "Model checked sentence",
        extra={
            "result": result,
            "thickness": report.thickness,
            "max_table_rows": evaluator.max_table_rows,
        },
    )
    return result, report, evaluator


def fpt_model_check(structure: Structure, phi: Formula) -> tuple[bool, AnalysisReport]:
    """
    Decide a sentence by rewriting it to thickness-many variables and evaluating
    the rewritten sentence bottom-up.

    Args:
        structure: Finite structure over phi's signature
        phi: Sentence

    Returns:
        Truth value and the analysis report carrying the largest intermediate table

    Raises:
        PreconditionError: phi has free variables
        InvariantViolation: an intermediate table exceeded |B|^thickness rows
    """
    result, report, _ = _fpt_evaluate(structure, phi)
    return result, report


def run_engine(engine: EngineEnum, structure: Structure, phi: Formula) -> EvaluationStats:
    """
    Evaluate a sentence with the chosen engine and time it.

    Args:
        engine: naive, bounded or fpt
        structure: Structure
        phi: Sentence

    Returns:
        EvaluationStats with the result and table/node counters
    """
    if not is_sentence(phi):
        raise PreconditionError(
            "evaluation expects a sentence",
            context={"free": sorted(str(v) for v in phi.free)},
        )
    started = time.perf_counter()
    thickness: Optional[int] = None
    if engine is EngineEnum.NAIVE:
        result = naive_eval(structure, phi)
        max_rows, nodes = 0, node_count(phi)
    elif engine is EngineEnum.BOUNDED:
        evaluator = BoundedEvaluator(structure)
        result = evaluator.evaluate(phi).is_true
        max_rows, nodes = evaluator.max_table_rows, evaluator.node_count
    else:
        result, report, evaluator = _fpt_evaluate(structure, phi)
        max_rows, nodes = evaluator.max_table_rows, evaluator.node_count
        thickness = report.thickness
    elapsed = (time.perf_counter() - started) * 1000

    return EvaluationStats(
        engine=engine.value,
        result=result,
        max_table_rows=max_rows,
        node_count=nodes,
        wall_ms=round(elapsed, 3),
        thickness=thickness,
    )
