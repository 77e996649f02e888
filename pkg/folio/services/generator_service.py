"""
Generator service: fixture families and seeded random formulas, structures,
graphs and hypergraphs.
"""

import itertools
import random
from typing import Optional

import networkx as nx

from folio.core.exceptions import PreconditionError
from folio.models.formula import (
    DEFAULT_SORT,
    And,
    Atom,
    Formula,
    Not,
    Or,
    Path,
    Quant,
    Quantifier,
    Variable,
    conjoin,
    disjoin,
)
from folio.models.gadget import AccordionCase
from folio.models.hypergraph import Hypergraph
from folio.models.signature import Signature
from folio.models.structure import Structure

# (symbol, arity) pool for random sentences
RANDOM_SYMBOLS = (("P", 1), ("Q", 1), ("E", 2), ("F", 2), ("R", 3))


def f_family(k: int) -> Formula:
    """forall y1..yk exists x (E1(y1,x) & ... & Ek(yk,x)); its thickness is k + 1."""
    if k < 1:
        raise PreconditionError("k must be at least 1", context={"k": k})
    ys = tuple(Variable(f"y{i}") for i in range(1, k + 1))
    x = Variable("x")
    body = conjoin(Atom(f"E{i}", (y, x)) for i, y in enumerate(ys, start=1))
    return Quant(Quantifier.FORALL, ys, Quant(Quantifier.EXISTS, (x,), body))


def chain_sentence(depth: int, symbol: str = "E") -> Formula:
    """
    forall x0 exists x1 (E(x0,x1) & exists x2 (E(x1,x2) & ...)) with `depth`
    quantifiers; it can be written with two variables.
    """
    if depth < 2:
        raise PreconditionError("depth must be at least 2", context={"depth": depth})
    xs = [Variable(f"x{i}") for i in range(depth)]
    inner: Formula = Quant(Quantifier.EXISTS, (xs[-1],), Atom(symbol, (xs[-2], xs[-1])))
    for i in range(depth - 2, 0, -1):
        inner = Quant(Quantifier.EXISTS, (xs[i],), And(Atom(symbol, (xs[i - 1], xs[i])), inner))
    return Quant(Quantifier.FORALL, (xs[0],), inner)


def clique_sentence(k: int, quantifier: Quantifier = Quantifier.EXISTS) -> Formula:
    """exists x1..xk of F_ij(xi,xj) over all pairs, joined by & (| for forall)."""
    xs = tuple(Variable(f"x{i}") for i in range(1, k + 1))
    if k == 1:
        return Quant(quantifier, xs, Atom("F", xs))
    parts = [
        Atom(f"F{i + 1}{j + 1}", (xs[i], xs[j]))
        for i, j in itertools.combinations(range(k), 2)
    ]
    join = conjoin if quantifier is Quantifier.EXISTS else disjoin
    return Quant(quantifier, xs, join(parts))


def _random_tree(rng: random.Random, leaves: list[Formula]) -> Formula:
    if len(leaves) == 1:
        node = leaves[0]
    else:
        cut = rng.randint(1, len(leaves) - 1)
        kind = rng.choice((And, Or))
        node = kind(_random_tree(rng, leaves[:cut]), _random_tree(rng, leaves[cut:]))
    if node.free and rng.random() < 0.4:
        pool = sorted(node.free)
        bound = tuple(rng.sample(pool, rng.randint(1, min(2, len(pool)))))
        node = Quant(rng.choice(list(Quantifier)), bound, node)
    if rng.random() < 0.2:
        node = Not(node)
    return node


def random_sentence(
    rng: random.Random,
    max_variables: int = 5,
    max_atoms: int = 4,
    max_arity: int = 2,
    distinct_arguments: bool = False,
) -> Formula:
    """
    Random one-sorted sentence.

    Atoms are drawn over at most max_variables variables and combined with
    random connectives, quantifier blocks and negations; remaining free
    variables are closed off at the top. With distinct_arguments no atom
    repeats a variable.
    """
    pool = [Variable(f"v{i}") for i in range(rng.randint(1, max_variables))]
    limit = min(max_arity, len(pool)) if distinct_arguments else max_arity
    choices = [(s, n) for s, n in RANDOM_SYMBOLS if n <= limit]
    leaves: list[Formula] = []
    for _ in range(rng.randint(1, max_atoms)):
        symbol, arity = rng.choice(choices)
        if distinct_arguments:
            args = tuple(rng.sample(pool, arity))
        else:
            args = tuple(rng.choice(pool) for _ in range(arity))
        leaves.append(Atom(symbol, args))
    phi = _random_tree(rng, leaves)
    while phi.free:
        remaining = sorted(phi.free)
        bound = tuple(rng.sample(remaining, rng.randint(1, len(remaining))))
        phi = Quant(rng.choice(list(Quantifier)), bound, phi)
    return phi


def random_block(rng: random.Random, max_variables: int = 5, max_atoms: int = 4) -> Quant:
    """Random exists V (AND atoms) or forall V (OR atoms) over a nonempty V of atom variables."""
    pool = [Variable(f"v{i}") for i in range(rng.randint(2, max_variables))]
    parts = []
    for index in range(rng.randint(1, max_atoms)):
        arity = rng.randint(1, min(3, len(pool)))
        parts.append(Atom(f"R{index}", tuple(rng.sample(pool, arity))))
    covered = sorted(frozenset().union(*(p.free for p in parts)))
    bound = tuple(rng.sample(covered, rng.randint(1, len(covered))))
    quantifier = rng.choice(list(Quantifier))
    join = conjoin if quantifier is Quantifier.EXISTS else disjoin
    return Quant(quantifier, bound, join(parts))


def random_accordion_instance(rng: random.Random, case: AccordionCase) -> tuple[Formula, Path]:
    """
    Random symbol-loose sentence with a single simple subformula the case applies
    to, and the path of that subformula.

    The simple subformula binds one or two variables, all of them in its first
    atom and at least one in every other atom; each outside variable occurs in
    exactly one atom. For the replacement cases it has two or three free
    variables and its bound variables get a sort of their own. Outside
    variables are bound by one block at the top, optionally next to an extra
    atom joined by a random connective.
    """
    replacing = case is not AccordionCase.BASED
    if case is AccordionCase.DISJUNCTION:
        quantifier = Quantifier.EXISTS
    elif case is AccordionCase.CONJUNCTION:
        quantifier = Quantifier.FORALL
    else:
        quantifier = rng.choice(list(Quantifier))

    sort = "a" if replacing else DEFAULT_SORT
    bound = [Variable(f"x{i}", sort) for i in range(1, rng.randint(1, 2) + 1)]
    outside = [Variable(f"z{i}") for i in range(1, rng.randint(2 if replacing else 0, 3) + 1)]
    arguments = [list(bound)]
    for _ in range(rng.randint(0, 2)):
        arguments.append(rng.sample(bound, rng.randint(1, len(bound))))
    for variable in outside:
        rng.choice(arguments).append(variable)
    for args in arguments:
        rng.shuffle(args)
    join = conjoin if quantifier is Quantifier.EXISTS else disjoin
    simple = Quant(
        quantifier,
        tuple(bound),
        join([Atom(f"R{i}", tuple(args)) for i, args in enumerate(arguments)]),
    )
    if not outside:
        return simple, ()

    body: Formula = simple
    path: Path = (0,)
    if rng.random() < 0.5:
        extra = Atom("S", tuple(rng.sample(outside, rng.randint(1, min(2, len(outside))))))
        kind = rng.choice((And, Or))
        if rng.random() < 0.5:
            body, path = kind(simple, extra), (0, 0)
        else:
            body, path = kind(extra, simple), (0, 1)
    return Quant(rng.choice(list(Quantifier)), tuple(outside), body), path


def random_structure(
    rng: random.Random,
    signature: Signature,
    max_size: int = 3,
    min_size: int = 1,
    density: Optional[float] = None,
) -> Structure:
    """Random structure: universes of min_size..max_size elements, random relations."""
    universes = {
        sort: [str(i) for i in range(rng.randint(min_size, max_size))]
        for sort in sorted(signature.sorts)
    }
    relations = {}
    for symbol in sorted(signature.relations):
        p = rng.random() if density is None else density
        domain = itertools.product(*(universes[s] for s in signature.arity(symbol)))
        relations[symbol] = [row for row in domain if rng.random() < p]
    return Structure.build(signature, universes, relations)


def random_graph(rng: random.Random, max_vertices: int = 7, min_vertices: int = 1) -> nx.Graph:
    """Random simple graph on vertices "0".."n-1" with a random edge density."""
    n = rng.randint(min_vertices, max_vertices)
    p = rng.random()
    graph = nx.Graph()
    graph.add_nodes_from(str(i) for i in range(n))
    graph.add_edges_from(
        (str(i), str(j)) for i, j in itertools.combinations(range(n), 2) if rng.random() < p
    )
    return graph


def graph_hypergraph(graph: nx.Graph) -> Hypergraph:
    return Hypergraph.from_edges(
        [frozenset(e) for e in graph.edges], vertices=frozenset(graph.nodes)
    )


def random_hypergraph(
    rng: random.Random, max_vertices: int = 7, max_edges: int = 5
) -> tuple[Hypergraph, frozenset]:
    """Random hypergraph with at least one edge, together with one of its edges."""
    vertices = [f"u{i}" for i in range(rng.randint(1, max_vertices))]
    edges = [
        frozenset(rng.sample(vertices, rng.randint(1, min(3, len(vertices)))))
        for _ in range(rng.randint(1, max_edges))
    ]
    hypergraph = Hypergraph.from_edges(edges, vertices=vertices)
    return hypergraph, rng.choice(edges)
