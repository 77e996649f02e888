"""
Self-test service: seeded randomized suites that check every rewriting and
engine against the brute-force evaluator and every runtime bound.
"""

import logging
import random
from collections import Counter
from typing import Callable, Optional, Sequence

from folio.core.config import settings
from folio.core.exceptions import FolioError, PreconditionError
from folio.models.formula import Formula, Not, Quantifier, variables
from folio.models.gadget import AccordionCase
from folio.models.structure import Structure
from folio.repositories.structure_repository import StructureRepository
from folio.schemas.selftest import Counterexample, SelftestReport, SuiteReport
from folio.services.engine_service import bounded_var_eval, fpt_model_check
from folio.services.formula_service import distinct_variable_count, width
from folio.services.gadget_service import (
    accordion_source,
    accordion_step,
    clique_gadget,
    co_clique_gadget,
    collapse_sorts,
    complement_structure,
    full_sort,
    has_clique,
    make_symbol_loose,
    match_accordion,
)
from folio.services.generator_service import (
    clique_sentence,
    graph_hypergraph,
    random_accordion_instance,
    random_block,
    random_graph,
    random_hypergraph,
    random_sentence,
    random_structure,
)
from folio.services.normalize_service import (
    is_layered,
    is_organized,
    lay,
    nnf,
    organize,
    positively_combined_subformulas,
)
from folio.services.semantics_service import equivalent_on, naive_eval
from folio.services.syntax_service import print_formula, signature_of
from folio.services.thickness_service import (
    block_hypergraph,
    block_parts,
    eliminate_last_variable,
    minimize_variables,
    thickness,
)
from folio.services.treewidth_service import (
    brute_force_treewidth,
    elimination_ordering_with_prefix,
    treewidth,
)

logger = logging.getLogger(__name__)

Case = Callable[[random.Random, int], Optional[Counterexample]]

SUITE_NAMES = (
    "equivalence",
    "variable_bound",
    "width_bound",
    "treewidth",
    "prefix",
    "complement",
    "sorts",
    "accordion",
    "clique",
)

# random structures each equivalence case is checked on
STRUCTURES_PER_CASE = 3

# outcomes a suite must see, each in at least MIN_OUTCOME_PERCENT of its cases
TRACKED_OUTCOMES = {
    "accordion": tuple(kind.name.lower() for kind in AccordionCase),
    "clique": ("clique", "no clique"),
}
MIN_OUTCOME_PERCENT = 15


class _Suites:
    """The randomized suites; each case returns a counterexample or None."""

    def __init__(self, universe_max: int, inject_mutant: bool):
        self.universe_max = universe_max
        self.inject_mutant = inject_mutant
        self.outcomes: dict[str, Counter] = {name: Counter() for name in TRACKED_OUTCOMES}

    def _structure(self, rng: random.Random, phi: Formula) -> Structure:
        return random_structure(rng, signature_of(phi), max_size=self.universe_max, min_size=1)

    @staticmethod
    def _failure(
        case: int, check: str, phi: Formula, structure: Optional[Structure] = None, detail=None
    ) -> Counterexample:
        document = None
        if structure is not None:
            document = StructureRepository.to_document(structure).model_dump()
        return Counterexample(
            case=case,
            check=check,
            formula=print_formula(phi),
            structure=document,
            detail=detail,
        )

    def equivalence(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        phi = random_sentence(rng)
        organized = organize(phi)
        laid = lay(phi)
        minimized = Not(phi) if self.inject_mutant else minimize_variables(phi)
        for _ in range(STRUCTURES_PER_CASE):
            structure = self._structure(rng, phi)
            expected = naive_eval(structure, phi)
            for name, candidate in (("org", organized), ("lay", laid), ("minimize", minimized)):
                if naive_eval(structure, candidate) != expected:
                    return self._failure(case, f"{name} preserves truth", phi, structure)
            if bounded_var_eval(structure, phi).is_true != expected:
                return self._failure(case, "bounded engine agrees", phi, structure)
            result, _ = fpt_model_check(structure, phi)
            if result != expected:
                return self._failure(case, "fpt engine agrees", phi, structure)

        if not all(is_organized(leaf) for leaf in positively_combined_subformulas(organized)):
            return self._failure(case, "org leaves are organized", phi)
        if not all(is_layered(leaf) for leaf in positively_combined_subformulas(laid)):
            return self._failure(case, "lay leaves are layered", phi)
        return None

    def variable_bound(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        phi = random_sentence(rng)
        minimized = minimize_variables(phi)
        bound = max(thickness(phi), len(phi.free))
        used = distinct_variable_count(minimized)
        if used > bound:
            return self._failure(
                case,
                "minimize uses at most thickness variables",
                phi,
                detail=f"{used} variables, bound {bound}",
            )
        return None

    def width_bound(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        block = random_block(rng)
        structure = self._structure(rng, block)
        ordering = elimination_ordering_with_prefix(block_hypergraph(block), block.free)
        bound = max([1 + ordering.lowerdeg()] + [width(p) for p in block_parts(block)])
        current: Formula = block
        while len(ordering.order) > len(block.free):
            current, ordering = eliminate_last_variable(current, ordering)
        if width(current) > bound:
            return self._failure(
                case, "elimination width bound", block, detail=f"width {width(current)}"
            )
        if not equivalent_on(structure, block, current):
            return self._failure(case, "elimination preserves truth", block, structure)
        return None

    def treewidth(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        graph = random_graph(rng)
        hypergraph = graph_hypergraph(graph)
        exact, brute = treewidth(hypergraph), brute_force_treewidth(hypergraph)
        if exact != brute:
            return Counterexample(
                case=case,
                check="treewidth matches brute force",
                detail=f"edges {sorted(map(sorted, graph.edges))}: {exact} != {brute}",
            )
        return None

    def prefix(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        hypergraph, edge = random_hypergraph(rng)
        ordering = elimination_ordering_with_prefix(hypergraph, edge)
        if set(ordering.order[: len(edge)]) != set(edge) or ordering.lowerdeg() != treewidth(
            hypergraph
        ):
            return Counterexample(
                case=case,
                check="ordering with prefix reaches treewidth",
                detail=f"edges {sorted(map(sorted, hypergraph.edges))}, prefix {sorted(edge)}",
            )
        return None

    def complement(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        phi, _ = make_symbol_loose(nnf(random_sentence(rng)))
        structure = self._structure(rng, phi)
        positive, complemented = complement_structure(phi, structure)
        if naive_eval(structure, phi) != naive_eval(complemented, positive):
            return self._failure(case, "complementation preserves truth", phi, structure)
        return None

    def sorts(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        """Complementation and sort collapse on a structure with one sort per variable."""
        phi, _ = make_symbol_loose(nnf(random_sentence(rng, distinct_arguments=True)))
        sorted_phi = full_sort(phi)
        structure = self._structure(rng, sorted_phi)
        expected = naive_eval(structure, sorted_phi)

        positive, complemented = complement_structure(sorted_phi, structure)
        if naive_eval(complemented, positive) != expected:
            return self._failure(
                case, "complementation preserves truth on many sorts", sorted_phi, structure
            )
        if naive_eval(collapse_sorts(phi, structure), phi) != expected:
            return self._failure(case, "sort collapse preserves truth", phi, structure)
        return None

    def accordion(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        """The three cases take turns; the partner's structure is random."""
        kind = list(AccordionCase)[case % len(AccordionCase)]
        self.outcomes["accordion"][kind.name.lower()] += 1
        phi, path = random_accordion_instance(rng, kind)
        psi = accordion_source(phi, path, kind)
        source = self._structure(rng, psi)
        detail = f"psi {print_formula(psi)}"

        matched, simple = match_accordion(psi, phi)
        if matched is not kind:
            return self._failure(
                case, "partner matches its case", phi, detail=f"{detail}, {matched.name.lower()}"
            )
        result = accordion_step(psi, phi, source)
        bound = len(variables(phi)) ** 2 * max(1, len(simple.free)) * source.measure
        if result.measure > bound:
            return self._failure(
                case,
                "accordion measure bound",
                phi,
                source,
                detail=f"{detail}, measure {result.measure}, bound {bound}",
            )
        if naive_eval(result, phi) != naive_eval(source, psi):
            return self._failure(case, "accordion step preserves truth", phi, source, detail)
        return None

    def clique(self, rng: random.Random, case: int) -> Optional[Counterexample]:
        graph = random_graph(rng, max_vertices=6)
        k = rng.randint(2, 4)
        present = has_clique(graph, k)
        self.outcomes["clique"]["clique" if present else "no clique"] += 1
        universal = rng.random() < 0.5
        if universal:
            theta = clique_sentence(k, Quantifier.FORALL)
            structure = co_clique_gadget(k, theta, graph)
        else:
            theta = clique_sentence(k)
            structure = clique_gadget(k, theta, graph)
        if naive_eval(structure, theta) != (present != universal):
            return self._failure(
                case,
                "clique gadget matches clique detection",
                theta,
                structure,
                detail=f"k={k}, edges {sorted(map(sorted, graph.edges))}",
            )
        return None

    def all(self) -> list[tuple[str, Case]]:
        return [(name, getattr(self, name)) for name in SUITE_NAMES]


def _run_suite(name: str, case_fn: Case, seed: int, cases: int) -> SuiteReport:
    rng = random.Random(f"{seed}:{name}")
    report = SuiteReport(name=name)
    for index in range(cases):
        try:
            counterexample = case_fn(rng, index)
        except FolioError as exc:
            counterexample = Counterexample(
                case=index, check="no error raised", detail=f"{exc.category}: {exc.detail}"
            )
        report.cases += 1
        if counterexample is not None:
            report.failures += 1
            if report.counterexample is None:
                report.counterexample = counterexample
    return report


def _check_outcomes(report: SuiteReport, counts: Counter, labels: Sequence[str]) -> None:
    """Record the outcome counts and fail the suite when one of them is too rare."""
    report.outcomes = {label: counts[label] for label in labels}
    required = report.cases * MIN_OUTCOME_PERCENT // 100
    scarce = [label for label in labels if counts[label] < required]
    if not scarce:
        return
    report.failures += 1
    if report.counterexample is None:
        report.counterexample = Counterexample(
            case=max(report.cases - 1, 0),
            check="every outcome occurs",
            detail=f"{report.outcomes}, each needs {required}",
        )


def run_selftest(
    seed: Optional[int] = None,
    cases: Optional[int] = None,
    inject_mutant: bool = False,
    universe_max: Optional[int] = None,
    suites: Optional[Sequence[str]] = None,
) -> SelftestReport:
    """
    Run the randomized suites.

    Each suite draws from its own generator seeded by (seed, suite name), so a
    suite's cases do not depend on which suites ran before it. Suites listed in
    TRACKED_OUTCOMES also fail when one of their outcomes falls below
    MIN_OUTCOME_PERCENT of the cases.

    Args:
        seed: Base seed (defaults to settings.seed)
        cases: Cases per suite (defaults to settings.selftest_cases)
        inject_mutant: Replace the variable minimization with its negation, so
            that the equivalence suite must fail
        universe_max: Largest random universe (defaults to settings.selftest_universe_max)
        suites: Names of the suites to run, in any order (defaults to all of SUITE_NAMES)

    Returns:
        SelftestReport; `passed` is False when any case failed

    Raises:
        PreconditionError: an unknown suite name was given
    """
    seed = settings.seed if seed is None else seed
    cases = settings.selftest_cases if cases is None else cases
    universe_max = settings.selftest_universe_max if universe_max is None else universe_max
    unknown = sorted(set(suites or ()) - set(SUITE_NAMES))
    if unknown:
        raise PreconditionError(f"unknown suites {unknown}", context={"suites": unknown})
    if cases == 0:
        logger.warning("Self-test ran with zero cases; passing vacuously", extra={"seed": seed})

    runner = _Suites(universe_max, inject_mutant)
    report = SelftestReport(seed=seed, cases=cases)
    for name, case_fn in runner.all():
        if suites is not None and name not in suites:
            continue
        suite = _run_suite(name, case_fn, seed, cases)
        if name in TRACKED_OUTCOMES:
            _check_outcomes(suite, runner.outcomes[name], TRACKED_OUTCOMES[name])
        report.suites.append(suite)
        level = logging.INFO if suite.passed else logging.ERROR
        logger.log(
            level,
            f"Suite {name} finished",
            extra={"suite": name, "cases": suite.cases, "failures": suite.failures},
        )
    return report
