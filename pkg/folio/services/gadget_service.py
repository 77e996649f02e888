"""
Gadget service: structure constructions that transfer model checking between
sentences (trivial relation filling, complementation, sort collapse, the
accordion step and the clique gadgets).

Every construction assumes nonempty universes for the sorts it quantifies over.
"""

import itertools
import logging
from collections import Counter
from typing import Iterable, Mapping, Optional

import networkx as nx

from folio.core.config import settings
from folio.core.exceptions import (
    GadgetError,
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
    Path,
    Quant,
    Quantifier,
    Variable,
    atoms,
    children,
    conjoin,
    disjoin,
    flatten,
    junction,
    replace_at,
    subformula_at,
    variables,
    walk,
)
from folio.models.gadget import AccordionCase, CliqueWitness, SimpleSubformula
from folio.models.hypergraph import complete_pairs
from folio.models.signature import Signature
from folio.models.structure import Element, Row, Structure
from folio.services.formula_service import is_nnf, is_symbol_loose, symbols
from folio.services.normalize_service import (
    is_layered,
    lay,
    positively_combined_subformulas,
    replace_symbols,
)
from folio.services.syntax_service import print_formula, signature_of

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Simple subformulas and loose variants
# ---------------------------------------------------------------------------


def is_simple(phi: Formula) -> bool:
    """Layered exists X (AND atoms) or forall Y (OR atoms)."""
    if not isinstance(phi, Quant):
        return False
    parts = flatten(phi.body, junction(phi.quantifier))
    return all(isinstance(p, Atom) for p in parts) and is_layered(phi)


def simple_subformulas(phi: Formula) -> list[SimpleSubformula]:
    """Every simple subformula of phi, in pre-order."""
    return [SimpleSubformula(path, node) for path, node in walk(phi) if is_simple(node)]


def _parts(phi: Quant) -> list[Formula]:
    return flatten(phi.body, junction(phi.quantifier))


def make_symbol_loose(phi: Formula) -> tuple[Formula, dict[str, str]]:
    """
    Rename repeated relation symbols occurrence by occurrence.

    The n-th occurrence of a repeated symbol R becomes R$n (skipping names in
    use); symbols occurring once keep their name.

    Returns:
        Symbol-loose formula and the map from new symbols to the originals
    """
    counts = Counter(symbols(phi))
    taken = set(counts)
    seen: Counter = Counter()
    mapping: dict[int, str] = {}
    originals: dict[str, str] = {}
    for index, atom in enumerate(atoms(phi)):
        if counts[atom.symbol] == 1:
            continue
        seen[atom.symbol] += 1
        candidate = f"{atom.symbol}${seen[atom.symbol]}"
        while candidate in taken:
            seen[atom.symbol] += 1
            candidate = f"{atom.symbol}${seen[atom.symbol]}"
        taken.add(candidate)
        mapping[index] = candidate
        originals[candidate] = atom.symbol
    return replace_symbols(phi, mapping), originals


def friendly_leaves(phi: Formula) -> list[Formula]:
    """Positively combined leaves of lay(phi), after making lay(phi) symbol-loose."""
    loose, _ = make_symbol_loose(lay(phi))
    return positively_combined_subformulas(loose)


# ---------------------------------------------------------------------------
# Trivial relations
# ---------------------------------------------------------------------------


def _force(phi: Formula, value: bool, forced: dict[str, bool], sorts: set[str]) -> None:
    """Choose full/empty interpretations making phi take the given value everywhere."""
    if isinstance(phi, Atom):
        if forced.get(phi.symbol, value) != value:
            raise GadgetError(
                f"symbol {phi.symbol} is needed both full and empty",
                context={"relation": phi.symbol},
            )
        forced[phi.symbol] = value
    elif isinstance(phi, Not):
        _force(phi.child, not value, forced, sorts)
    elif isinstance(phi, (And, Or)):
        _force(phi.left, value, forced, sorts)
        _force(phi.right, value, forced, sorts)
    else:
        sorts.update(v.sort for v in phi.variables)
        _force(phi.body, value, forced, sorts)


def _context(
    phi: Formula, path: Path, allow_quantifiers: bool
) -> tuple[Formula, dict[str, bool], set[str]]:
    """
    Walk from the root to the subformula at path, forcing conjunction siblings
    true and disjunction siblings false.

    Returns:
        The subformula, the forced symbol values and the sorts that must be
        nonempty for the forcing to hold
    """
    forced: dict[str, bool] = {}
    sorts: set[str] = set()
    node = phi
    for index in path:
        kids = children(node)
        if index < 0 or index >= len(kids):
            raise PreconditionError(
                "path does not address a subformula", context={"path": list(path)}
            )
        if isinstance(node, (And, Or)):
            _force(kids[1 - index], isinstance(node, And), forced, sorts)
        elif isinstance(node, Quant) and allow_quantifiers:
            sorts.update(v.sort for v in node.variables)
        else:
            raise GadgetError(
                "subformula is not positively combined in the formula",
                context={"path": list(path)},
            )
        node = kids[index]
    return node, forced, sorts


def _trivial_relations(
    signature: Signature, universes: Mapping[str, tuple[Element, ...]], forced: Mapping[str, bool]
) -> dict[str, frozenset[Row]]:
    relations = {}
    for symbol, value in forced.items():
        arity = signature.arity(symbol)
        rows = itertools.product(*(universes[s] for s in arity)) if value else ()
        relations[symbol] = frozenset(rows)
    return relations


def _check_nonempty(universes: Mapping[str, tuple[Element, ...]], sorts: Iterable[str]) -> None:
    empty = sorted(s for s in sorts if not universes.get(s))
    if empty:
        raise GadgetError(
            f"construction needs nonempty universes for sorts {empty}", context={"sorts": empty}
        )


def _require_symbol_loose(phi: Formula) -> None:
    if not is_symbol_loose(phi):
        repeated = sorted(s for s, n in Counter(symbols(phi)).items() if n > 1)
        raise GadgetError(
            f"symbol collision: {repeated} occur more than once",
            context={"relations": repeated},
        )


def fill_trivial_relations(phi: Formula, path: Path, structure: Structure) -> Structure:
    """
    Extend a structure for the subformula at path to a structure for phi.

    Symbols outside the subformula get full or empty relations so that phi is
    true exactly when the subformula is: conjunction siblings are made true,
    disjunction siblings false, negation flips the choice. Sorts missing from
    the structure get the one-element universe {filler_element}.

    Args:
        phi: Symbol-loose formula
        path: Path of a positively combined subformula (only And/Or above it)
        structure: Structure interpreting the symbols of that subformula

    Returns:
        Structure over the signature of phi

    Raises:
        GadgetError: repeated symbols, a non positively combined subformula, or
            a structure already interpreting a symbol outside the subformula
    """
    _require_symbol_loose(phi)
    target, forced, sorts = _context(phi, path, allow_quantifiers=False)
    signature = signature_of(phi)

    collisions = sorted(set(forced) & set(structure.signature.relations))
    if collisions:
        raise GadgetError(
            f"structure already interprets {collisions} outside the subformula",
            context={"relations": collisions},
        )
    relations: dict[str, frozenset[Row]] = {}
    for symbol in {a.symbol for a in atoms(target)}:
        if structure.signature.arity(symbol) != signature.arity(symbol):
            raise SignatureError(
                f"arity mismatch for {symbol}", context={"relation": symbol}
            )
        relations[symbol] = structure.relation(symbol)

    universes = {s: (settings.filler_element,) for s in signature.sorts}
    universes.update(structure.universes)
    _check_nonempty(universes, sorts)
    relations.update(_trivial_relations(signature, universes, forced))
    logger.debug("Filled trivial relations", extra={"forced": len(forced)})
    return Structure(signature=signature, universes=universes, relations=relations)


# ---------------------------------------------------------------------------
# Complementation, full sorting and sort collapse
# ---------------------------------------------------------------------------


def _strip_negations(phi: Formula) -> Formula:
    if isinstance(phi, Atom):
        return phi
    if isinstance(phi, Not):
        return phi.child
    if isinstance(phi, (And, Or)):
        return type(phi)(_strip_negations(phi.left), _strip_negations(phi.right))
    return Quant(phi.quantifier, phi.variables, _strip_negations(phi.body))


def complement_structure(phi: Formula, structure: Structure) -> tuple[Formula, Structure]:
    """
    Remove the negations of phi and complement the negated relations.

    Args:
        phi: Symbol-loose formula with negation only directly above atoms
        structure: Structure for phi

    Returns:
        (positive formula, structure) satisfying the same assignments as the inputs

    Raises:
        GadgetError: a symbol occurs twice
        PreconditionError: a negation sits above a non-atom
    """
    _require_symbol_loose(phi)
    if not is_nnf(phi):
        raise PreconditionError(
            "negations must sit directly above atoms", context={"formula": print_formula(phi)}
        )
    negated = {node.child.symbol for _, node in walk(phi) if isinstance(node, Not)}
    relations = {
        symbol: structure.full_relation(structure.signature.arity(symbol))
        - structure.relation(symbol)
        for symbol in negated
    }
    return _strip_negations(phi), structure.replace(relations=relations)


def _map_variables(phi: Formula, function) -> Formula:
    if isinstance(phi, Atom):
        return Atom(phi.symbol, tuple(function(v) for v in phi.args))
    if isinstance(phi, Not):
        return Not(_map_variables(phi.child, function))
    if isinstance(phi, (And, Or)):
        return type(phi)(_map_variables(phi.left, function), _map_variables(phi.right, function))
    return Quant(
        phi.quantifier,
        tuple(function(v) for v in phi.variables),
        _map_variables(phi.body, function),
    )


def _single_sort(phi: Formula) -> str:
    sorts = {v.sort for v in variables(phi)}
    if len(sorts) != 1:
        raise PreconditionError(
            f"expected a one-sorted formula, found sorts {sorted(sorts)}",
            context={"formula": print_formula(phi)},
        )
    return next(iter(sorts))


def full_sort(phi: Formula) -> Formula:
    """
    Fully-sorted version of a one-sorted formula: every variable becomes its own sort.

    Raises:
        GadgetError: a symbol occurs twice or an atom repeats a variable
        PreconditionError: phi uses more than one sort
    """
    _require_symbol_loose(phi)
    for atom in atoms(phi):
        if len(set(atom.args)) != len(atom.args):
            raise GadgetError(
                f"atom {atom.symbol} repeats a variable", context={"relation": atom.symbol}
            )
    _single_sort(phi)
    return _map_variables(phi, lambda v: Variable(v.name, v.name))


def collapse_sorts(phi: Formula, structure: Structure) -> Structure:
    """
    One-sorted structure for phi from a structure for full_sort(phi).

    The universe is the largest universe of the structure (ties broken by sort
    name); the i-th element maps to the i-th element of every other sort, or to
    its last element when that sort is smaller. Relations are the preimages.

    Args:
        phi: One-sorted, symbol-loose formula
        structure: Structure over the signature of full_sort(phi)

    Returns:
        Structure over the signature of phi

    Raises:
        GadgetError: some universe is empty
        SignatureError: the structure does not match full_sort(phi)
    """
    sort = _single_sort(phi)
    expected = signature_of(full_sort(phi))
    for symbol, arity in expected.relations.items():
        if structure.signature.arity(symbol) != arity:
            raise SignatureError(
                f"structure gives {symbol} arity {list(structure.signature.arity(symbol))}, "
                f"expected {list(arity)}",
                context={"relation": symbol},
            )
    _check_nonempty(structure.universes, expected.sorts)

    largest = max(sorted(expected.sorts), key=lambda s: len(structure.universe(s)))
    base = structure.universe(largest)
    preimage: dict[str, dict[Element, list[Element]]] = {}
    for s in expected.sorts:
        universe = structure.universe(s)
        images: dict[Element, list[Element]] = {}
        for i, element in enumerate(base):
            images.setdefault(universe[min(i, len(universe) - 1)], []).append(element)
        preimage[s] = images

    relations = {}
    for symbol, arity in expected.relations.items():
        rows: set[Row] = set()
        for row in structure.relation(symbol):
            rows.update(
                itertools.product(*(preimage[s].get(e, ()) for s, e in zip(arity, row)))
            )
        relations[symbol] = rows
    signature = Signature(
        sorts=frozenset({sort}),
        relations={symbol: (sort,) * len(arity) for symbol, arity in expected.relations.items()},
    )
    logger.debug("Collapsed sorts", extra={"sorts": len(expected.sorts), "universe": len(base)})
    return Structure.build(signature, {sort: base}, relations)


# ---------------------------------------------------------------------------
# Accordion step
# ---------------------------------------------------------------------------


def _fresh_symbols(taken: set[str], count: int) -> list[str]:
    names = []
    index = 1
    while len(names) < count:
        candidate = f"{settings.fresh_symbol_prefix}{index}"
        if candidate not in taken:
            names.append(candidate)
        index += 1
    return names


def accordion_source(phi: Formula, path: Path, case: AccordionCase) -> Formula:
    """
    Build the partner psi of phi for the simple subformula at path.

    Case BASED gives the sentence based on the subformula (each atom keeps only
    its quantified variables); DISJUNCTION replaces an exists-subformula with a
    disjunction of fresh binary atoms, one per pair of its free variables;
    CONJUNCTION does the same for a forall-subformula with a conjunction.

    Raises:
        GadgetError: no simple subformula at path, or the case does not apply
    """
    node = subformula_at(phi, path)
    if not is_simple(node):
        raise GadgetError(
            "no simple subformula at the given path", context={"path": list(path)}
        )
    bound = set(node.variables)
    join = conjoin if node.quantifier is Quantifier.EXISTS else disjoin

    if case is AccordionCase.BASED:
        based = []
        for atom in _parts(node):
            kept = tuple(dict.fromkeys(v for v in atom.args if v in bound))
            if not kept:
                raise GadgetError(
                    f"atom {atom.symbol} has no quantified variable to keep",
                    context={"relation": atom.symbol},
                )
            based.append(Atom(atom.symbol, kept))
        return Quant(node.quantifier, node.variables, join(based))

    wanted = Quantifier.EXISTS if case is AccordionCase.DISJUNCTION else Quantifier.FORALL
    if node.quantifier is not wanted:
        raise GadgetError(
            f"case {case.name.lower()} needs a {wanted.value} subformula",
            context={"path": list(path)},
        )
    free = sorted(node.free)
    if len(free) < 2:
        raise GadgetError(
            "the subformula needs at least two free variables", context={"path": list(path)}
        )
    pairs = list(itertools.combinations(free, 2))
    names = _fresh_symbols(set(symbols(phi)), len(pairs))
    fresh = [Atom(name, pair) for name, pair in zip(names, pairs)]
    replacement = disjoin(fresh) if wanted is Quantifier.EXISTS else conjoin(fresh)
    return replace_at(phi, path, replacement)


def _fresh_junction(psi: Formula, phi: Formula, simple: SimpleSubformula) -> Optional[list[Atom]]:
    """The fresh binary atoms psi puts in place of the simple subformula, if any."""
    try:
        sub = subformula_at(psi, simple.path)
    except PreconditionError:
        return None
    if replace_at(phi, simple.path, sub) != psi:
        return None
    connective = Or if simple.quantifier is Quantifier.EXISTS else And
    parts = flatten(sub, connective)
    if not all(isinstance(p, Atom) and len(p.args) == 2 and len(p.free) == 2 for p in parts):
        return None
    counts = Counter(symbols(psi))
    if any(counts[p.symbol] != 1 for p in parts):
        return None
    pairs = [p.free for p in parts]
    if len(set(pairs)) != len(pairs) or set(pairs) != complete_pairs(simple.free):
        return None
    clash = sorted({p.symbol for p in parts} & set(symbols(phi)))
    if clash:
        raise GadgetError(
            f"fresh symbols {clash} already occur in phi", context={"relations": clash}
        )
    return parts


def _is_based(psi: Formula, simple: SimpleSubformula) -> bool:
    node = simple.formula
    if not isinstance(psi, Quant) or psi.quantifier is not node.quantifier:
        return False
    if set(psi.variables) != set(node.variables):
        return False
    ours, theirs = _parts(node), _parts(psi)
    if len(ours) != len(theirs):
        return False
    bound = set(node.variables)
    return all(
        isinstance(b, Atom) and b.free == a.free & bound for a, b in zip(ours, theirs)
    )


def match_accordion(psi: Formula, phi: Formula) -> tuple[AccordionCase, SimpleSubformula]:
    """
    Find how psi is obtained from phi.

    Replacement cases are tried first, then the based-sentence case, each over
    the simple subformulas of phi in pre-order.

    Raises:
        GadgetError: psi is not obtained from phi by any case
    """
    candidates = simple_subformulas(phi)
    for simple in candidates:
        if len(simple.free) >= 2 and _fresh_junction(psi, phi, simple) is not None:
            if simple.quantifier is Quantifier.EXISTS:
                return AccordionCase.DISJUNCTION, simple
            return AccordionCase.CONJUNCTION, simple
    for simple in candidates:
        if _is_based(psi, simple):
            return AccordionCase.BASED, simple
    raise GadgetError(
        "psi is not obtained from phi by any accordion case",
        context={"psi": print_formula(psi), "phi": print_formula(phi)},
    )


def _replacement_structure(
    psi: Formula, phi: Formula, simple: SimpleSubformula, source: Structure
) -> Structure:
    conjunction = simple.quantifier is Quantifier.FORALL
    bound = set(simple.formula.variables)
    outside = variables(phi) - bound
    own_sorts = {v.sort for v in bound}
    shared = sorted(own_sorts & {v.sort for v in outside})
    if shared:
        raise GadgetError(
            f"quantified variables of the subformula share sorts {shared} with other variables",
            context={"sorts": shared},
        )

    fresh = _fresh_junction(psi, phi, simple)
    fresh_rows: dict[str, frozenset[Row]] = {}
    for atom in fresh:
        rows = source.relation(atom.symbol)
        if conjunction:
            # the dual case runs the disjunction construction on complemented relations
            rows = source.full_relation(source.signature.arity(atom.symbol)) - rows
        fresh_rows[atom.symbol] = rows

    delimiter = settings.element_delimiter
    decode: dict[Element, tuple[Atom, Variable, Element]] = {}
    composite: list[Element] = []
    for atom in fresh:
        for u in atom.args:
            for a in source.universe(u.sort):
                element = delimiter.join((atom.symbol, u.name, a))
                decode[element] = (atom, u, a)
                composite.append(element)

    signature = signature_of(phi)
    universes = dict(source.universes)
    for s in own_sorts:
        universes[s] = tuple(composite)

    def admits(args: tuple[Variable, ...], row: Row) -> bool:
        positions = [i for i, u in enumerate(args) if u in bound]
        if len({row[i] for i in positions}) > 1:
            return False
        for i in positions:
            atom, u, a = decode[row[i]]
            for j, other in enumerate(args):
                if other in bound:
                    continue
                if other == u and row[j] != a:
                    return False
                if other != u and {other, u} == set(atom.args):
                    value = {u: a, other: row[j]}
                    if tuple(value[w] for w in atom.args) not in fresh_rows[atom.symbol]:
                        return False
        return True

    relations: dict[str, frozenset[Row]] = {}
    inside = _parts(simple.formula)
    for atom in inside:
        domains = [universes[v.sort] for v in atom.args]
        rows = {row for row in itertools.product(*domains) if admits(atom.args, row)}
        if conjunction:
            rows = set(itertools.product(*domains)) - rows
        relations[atom.symbol] = frozenset(rows)
    inside_symbols = {a.symbol for a in inside}
    for symbol in signature.relations:
        if symbol not in inside_symbols:
            relations[symbol] = source.relation(symbol)
    return Structure(signature=signature, universes=universes, relations=relations)


def _based_structure(
    psi: Formula, phi: Formula, simple: SimpleSubformula, source: Structure
) -> Structure:
    signature = signature_of(phi)
    universes = {s: (settings.filler_element,) for s in signature.sorts}
    for v in simple.formula.variables:
        universes[v.sort] = source.universe(v.sort)
    _check_nonempty(universes, universes.keys())

    bound = set(simple.formula.variables)
    target, forced, _ = _context(phi, simple.path, allow_quantifiers=True)
    relations: dict[str, frozenset[Row]] = {}
    for ours, theirs in zip(_parts(target), _parts(psi)):
        positions = [ours.args.index(v) for v in theirs.args]
        member = source.relation(theirs.symbol)
        domains = [universes[v.sort] for v in ours.args]
        relations[ours.symbol] = frozenset(
            row
            for row in itertools.product(*domains)
            if tuple(row[i] for i in positions) in member
        )
    relations.update(_trivial_relations(signature, universes, forced))
    logger.debug("Based-sentence structure", extra={"quantified": len(bound)})
    return Structure(signature=signature, universes=universes, relations=relations)


def accordion_step(psi: Formula, phi: Formula, structure: Structure) -> Structure:
    """
    Structure for phi that satisfies phi exactly when the given structure satisfies psi.

    Args:
        psi: Partner sentence of phi (see accordion_source)
        phi: Symbol-loose sentence
        structure: Structure over the signature of psi

    Returns:
        Structure over the signature of phi

    Raises:
        GadgetError: (psi, phi) matches no case, or fresh symbols collide
        InvariantViolation: the largest universe exceeds
            |V|^2 * max(1, |free(phi')|) * (largest universe of the input),
            with V the variables of phi
    """
    _require_symbol_loose(phi)
    case, simple = match_accordion(psi, phi)
    if case is AccordionCase.BASED:
        result = _based_structure(psi, phi, simple, structure)
    else:
        result = _replacement_structure(psi, phi, simple, structure)

    bound = len(variables(phi)) ** 2 * max(1, len(simple.free)) * structure.measure
    if result.measure > bound:
        raise InvariantViolation(
            f"accordion step produced measure {result.measure}, bound is {bound}",
            context={"case": case.value, "path": list(simple.path)},
        )
    logger.info(
        "Accordion step",
        extra={"case": case.value, "measure_in": structure.measure, "measure_out": result.measure},
    )
    return result


# ---------------------------------------------------------------------------
# Clique gadgets
# ---------------------------------------------------------------------------


def has_clique(graph: nx.Graph, k: int) -> bool:
    """Whether the graph (self-loops ignored) has k pairwise adjacent vertices."""
    if k <= 0:
        return True
    simple = nx.Graph(graph)
    simple.remove_edges_from(list(nx.selfloop_edges(simple)))
    return any(len(clique) >= k for clique in nx.find_cliques(simple))


def _binders(theta: Formula, simple: SimpleSubformula) -> dict[Variable, Quantifier]:
    """Quantifier binding each variable at the simple subformula (its own block included)."""
    binding: dict[Variable, Quantifier] = {}
    node = theta
    for index in simple.path:
        if isinstance(node, Quant):
            binding.update({v: node.quantifier for v in node.variables})
        node = children(node)[index]
    binding.update({v: simple.quantifier for v in simple.formula.variables})
    return binding


def _find_clique(theta: Formula, k: int, quantifier: Quantifier) -> Optional[CliqueWitness]:
    if k < 1:
        raise PreconditionError("clique size must be at least 1", context={"k": k})
    if theta.free:
        raise PreconditionError(
            "clique detection expects a sentence", context={"formula": print_formula(theta)}
        )
    for simple in simple_subformulas(theta):
        if simple.quantifier is not quantifier:
            continue
        binding = _binders(theta, simple)
        parts = _parts(simple.formula)
        eligible = sorted(
            v for part in parts for v in part.args if binding.get(v) is quantifier
        )
        coverage = nx.Graph()
        coverage.add_nodes_from(eligible)
        for part in parts:
            coverage.add_edges_from(
                itertools.combinations(sorted(set(part.args) & set(eligible)), 2)
            )
        cliques = sorted(
            (sorted(c) for c in nx.find_cliques(coverage)), key=lambda c: (-len(c), c)
        )
        if cliques and len(cliques[0]) >= k:
            chosen = tuple(cliques[0][:k])
            witness_atoms = tuple(p for p in parts if len(set(p.args) & set(chosen)) >= 2)
            return CliqueWitness(
                variables=chosen, atoms=witness_atoms, path=simple.path, quantifier=quantifier
            )
    return None


def find_existential_clique(theta: Formula, k: int) -> Optional[CliqueWitness]:
    """
    k existentially quantified variables covered pairwise by the atoms of one
    simple exists-subformula of theta.

    Returns:
        A witness with exactly k variables, or None
    """
    return _find_clique(theta, k, Quantifier.EXISTS)


def find_universal_clique(theta: Formula, k: int) -> Optional[CliqueWitness]:
    """Dual of find_existential_clique for simple forall-subformulas."""
    return _find_clique(theta, k, Quantifier.FORALL)


def _clique_structure(theta: Formula, witness: CliqueWitness, graph: nx.Graph) -> Structure:
    _require_symbol_loose(theta)
    if graph.number_of_nodes() == 0:
        raise GadgetError("graph has no vertices")
    universal = witness.quantifier is Quantifier.FORALL
    vertices = tuple(sorted(str(v) for v in graph.nodes))
    adjacent = set()
    for u, w in graph.edges:
        if u != w:
            adjacent.update({(str(u), str(w)), (str(w), str(u))})

    signature = signature_of(theta)
    universes = {s: vertices for s in signature.sorts}
    target, forced, _ = _context(theta, witness.path, allow_quantifiers=True)
    chosen = set(witness.variables)
    witness_symbols = {a.symbol for a in witness.atoms}

    relations: dict[str, frozenset[Row]] = {}
    for atom in _parts(target):
        domain = list(itertools.product(vertices, repeat=len(atom.args)))
        if atom.symbol in witness_symbols:
            constrained = [
                (i, j)
                for i, j in itertools.combinations(range(len(atom.args)), 2)
                if atom.args[i] in chosen
                and atom.args[j] in chosen
                and atom.args[i] != atom.args[j]
            ]
            rows = {
                row for row in domain if all((row[i], row[j]) in adjacent for i, j in constrained)
            }
            if universal:
                rows = set(domain) - rows
        else:
            # conjuncts of the witness block are made true, disjuncts false
            rows = set() if universal else set(domain)
        relations[atom.symbol] = frozenset(rows)
    relations.update(_trivial_relations(signature, universes, forced))
    logger.info(
        "Built clique gadget",
        extra={"k": len(witness.variables), "vertices": len(vertices), "universal": universal},
    )
    return Structure(signature=signature, universes=universes, relations=relations)


def clique_gadget(k: int, theta: Formula, graph: nx.Graph) -> Structure:
    """
    Structure that satisfies theta exactly when the graph has a k-clique.

    Args:
        k: Clique size
        theta: Symbol-loose sentence containing an existential k-clique
        graph: Finite graph with at least one vertex

    Returns:
        Structure with every universe V(G)

    Raises:
        GadgetError: theta has no existential k-clique, or the graph is empty
    """
    witness = find_existential_clique(theta, k)
    if witness is None:
        raise GadgetError(
            f"sentence contains no existential {k}-clique", context={"k": k}
        )
    return _clique_structure(theta, witness, graph)


def co_clique_gadget(k: int, theta: Formula, graph: nx.Graph) -> Structure:
    """
    Structure that satisfies theta exactly when the graph has no k-clique.

    Raises:
        GadgetError: theta has no universal k-clique, or the graph is empty
    """
    witness = find_universal_clique(theta, k)
    if witness is None:
        raise GadgetError(
            f"sentence contains no universal {k}-clique", context={"k": k}
        )
    return _clique_structure(theta, witness, graph)
