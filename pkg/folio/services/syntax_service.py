"""
Syntax service: parsing formula text into the AST and printing it back.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput

from folio.core.exceptions import FormulaSyntaxError, SignatureError
from folio.models.formula import (
    DEFAULT_SORT,
    And,
    Atom,
    Formula,
    Not,
    Or,
    Quant,
    Quantifier,
    Variable,
    walk,
)
from folio.models.signature import Signature

logger = logging.getLogger(__name__)

# Shift/reduce conflicts resolve as shift, so a quantifier body extends as far
# right as the enclosing parenthesized group allows.
FORMULA_GRAMMAR = r"""
    ?start: formula

    ?formula: disjunction

    ?disjunction: conjunction
        | disjunction "|" conjunction -> disjunction_node

    ?conjunction: unary
        | conjunction "&" unary -> conjunction_node

    ?unary: "!" unary -> negation
        | atom
        | quantified
        | "(" formula ")"

    quantified: QUANTIFIER binder+ "." formula

    binder: NAME (":" NAME)?

    atom: NAME "(" term ("," term)* ")"

    term: NAME (":" NAME)?

    QUANTIFIER.2: /(exists|forall)(?![A-Za-z0-9_$'])/
    NAME: /[A-Za-z_][A-Za-z0-9_$']*/

    %import common.WS
    %ignore WS
"""


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(FORMULA_GRAMMAR, parser="lalr", maybe_placeholders=False)


# Intermediate tree produced by the grammar transformer; names are not yet sorted.
@dataclass(frozen=True)
class _Name:
    name: str
    sort: Optional[str]


@dataclass(frozen=True)
class _RawAtom:
    symbol: str
    args: tuple[_Name, ...]


@dataclass(frozen=True)
class _RawNot:
    child: "_Raw"


@dataclass(frozen=True)
class _RawBinary:
    kind: type
    left: "_Raw"
    right: "_Raw"


@dataclass(frozen=True)
class _RawQuant:
    quantifier: Quantifier
    binders: tuple[_Name, ...]
    body: "_Raw"


_Raw = Union[_RawAtom, _RawNot, _RawBinary, _RawQuant]


@v_args(inline=True)
class _RawBuilder(Transformer):
    """Turns the lark parse tree into the intermediate tree."""

    def disjunction_node(self, left, right):
        return _RawBinary(Or, left, right)

    def conjunction_node(self, left, right):
        return _RawBinary(And, left, right)

    def negation(self, child):
        return _RawNot(child)

    def quantified(self, quantifier: Token, *rest):
        *binders, body = rest
        return _RawQuant(Quantifier(str(quantifier)), tuple(binders), body)

    def binder(self, name: Token, sort: Optional[Token] = None):
        return _Name(str(name), str(sort) if sort is not None else None)

    term = binder

    def atom(self, symbol: Token, *args):
        return _RawAtom(str(symbol), tuple(args))


class _SortResolver:
    """
    Assigns sorts to every variable occurrence.

    A binder or free name takes its sort from annotations and from the arity
    sorts of the positions it fills; conflicting demands are sort mismatches.
    Names with no demand default to the sort "U".
    """

    def __init__(self, signature: Optional[Signature]):
        self.signature = signature
        self.demands: dict[object, set[str]] = {}
        self.labels: dict[object, str] = {}
        self.resolved: dict[object, str] = {}
        self.inferred_arities: dict[str, tuple[str, ...]] = {}
        self.binder_keys: list[object] = []

    def _key(self, name: str, scope: dict[str, object]) -> object:
        if name in scope:
            return scope[name]
        key = ("free", name)
        self.labels.setdefault(key, name)
        return key

    def _demand(self, key: object, sort: str) -> None:
        self.demands.setdefault(key, set()).add(sort)

    def collect(self, raw: _Raw, scope: dict[str, object]) -> None:
        if isinstance(raw, _RawAtom):
            arity = None
            if self.signature is not None:
                arity = self.signature.arity(raw.symbol)
                if len(arity) != len(raw.args):
                    raise SignatureError(
                        f"arity mismatch: {raw.symbol} expects {len(arity)} "
                        f"arguments, got {len(raw.args)}",
                        context={"relation": raw.symbol},
                    )
            for index, arg in enumerate(raw.args):
                key = self._key(arg.name, scope)
                if arg.sort is not None:
                    self._demand(key, arg.sort)
                if arity is not None:
                    self._demand(key, arity[index])
        elif isinstance(raw, _RawNot):
            self.collect(raw.child, scope)
        elif isinstance(raw, _RawBinary):
            self.collect(raw.left, scope)
            self.collect(raw.right, scope)
        else:
            names = [b.name for b in raw.binders]
            if len(set(names)) != len(names):
                raise FormulaSyntaxError(
                    "quantifier block binds a variable twice",
                    context={"variables": names},
                )
            inner = dict(scope)
            for binder in raw.binders:
                key = object()
                self.labels[key] = binder.name
                self.demands[key] = set()
                self.binder_keys.append(key)
                if binder.sort is not None:
                    self._demand(key, binder.sort)
                inner[binder.name] = key
            self.collect(raw.body, inner)

    def resolve(self) -> None:
        for key, sorts in self.demands.items():
            if len(sorts) > 1:
                raise SignatureError(
                    f"sort mismatch for variable {self.labels[key]}: {sorted(sorts)}",
                    context={"variable": self.labels[key]},
                )
            self.resolved[key] = next(iter(sorts)) if sorts else DEFAULT_SORT

    def build(self, raw: _Raw, scope: dict[str, object]) -> Formula:
        if isinstance(raw, _RawAtom):
            args = tuple(
                Variable(arg.name, self.resolved[self._key(arg.name, scope)])
                for arg in raw.args
            )
            sorts = tuple(v.sort for v in args)
            if self.signature is None:
                known = self.inferred_arities.setdefault(raw.symbol, sorts)
                if known != sorts:
                    raise SignatureError(
                        f"relation {raw.symbol} used with arities {list(known)} and {list(sorts)}",
                        context={"relation": raw.symbol},
                    )
            return Atom(raw.symbol, args)
        if isinstance(raw, _RawNot):
            return Not(self.build(raw.child, scope))
        if isinstance(raw, _RawBinary):
            return raw.kind(self.build(raw.left, scope), self.build(raw.right, scope))
        inner = dict(scope)
        bound = []
        for binder in raw.binders:
            key = next(self._replay)
            inner[binder.name] = key
            bound.append(Variable(binder.name, self.resolved[key]))
        return Quant(raw.quantifier, tuple(bound), self.build(raw.body, inner))

    def run(self, raw: _Raw) -> Formula:
        self.collect(raw, {})
        self.resolve()
        # build visits binders in the same pre-order as collect
        self._replay = iter(self.binder_keys)
        return self.build(raw, {})


def parse_formula(text: str, sig: Optional[Signature] = None) -> Formula:
    """
    Parse formula text.

    Args:
        text: Formula in the folio grammar
        sig: Signature to check atoms against; None infers one from the text

    Returns:
        Formula AST

    Raises:
        FormulaSyntaxError: text does not match the grammar
        SignatureError: unknown symbol, arity mismatch or sort mismatch
    """
    try:
        tree = _parser().parse(text)
    except UnexpectedEOF as exc:
        raise FormulaSyntaxError(
            "unexpected end of input", context={"expected": sorted(exc.expected)}
        ) from None
    except UnexpectedCharacters as exc:
        raise FormulaSyntaxError(
            f"unexpected character {text[exc.pos_in_stream]!r}", exc.line, exc.column
        ) from None
    except UnexpectedInput as exc:
        token = getattr(exc, "token", None)
        if token is not None and token.type == "$END":
            raise FormulaSyntaxError("unexpected end of input") from None
        raise FormulaSyntaxError(
            f"unexpected token {str(token)!r}", exc.line, exc.column
        ) from None

    raw = _RawBuilder().transform(tree)
    formula = _SortResolver(sig).run(raw)
    logger.debug("Parsed formula", extra={"length": len(text)})
    return formula


def _name(variable: Variable) -> str:
    return str(variable)


def _fmt(phi: Formula) -> tuple[str, bool]:
    """
    Render phi; the flag reports whether the text ends in an open quantifier
    scope that would absorb anything written to its right.
    """
    if isinstance(phi, Atom):
        return f"{phi.symbol}({','.join(_name(v) for v in phi.args)})", False

    if isinstance(phi, Not):
        if isinstance(phi.child, (Atom, Not)):
            text, is_open = _fmt(phi.child)
            return "!" + text, is_open
        return f"!({_fmt(phi.child)[0]})", False

    if isinstance(phi, Quant):
        body, _ = _fmt(phi.body)
        if isinstance(phi.body, (And, Or)):
            body = f"({body})"
        binders = " ".join(_name(v) for v in phi.variables)
        return f"{phi.quantifier.value} {binders}. {body}", True

    left, left_open = _fmt(phi.left)
    right, right_open = _fmt(phi.right)
    if isinstance(phi, And):
        wrap_left = left_open or isinstance(phi.left, Or)
        wrap_right = isinstance(phi.right, (And, Or))
        operator = " & "
    else:
        wrap_left = left_open
        wrap_right = isinstance(phi.right, Or)
        operator = " | "
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right, right_open = f"({right})", False
    return left + operator + right, right_open


def print_formula(phi: Formula) -> str:
    """
    Print a formula so that parse_formula gives back the same AST.

    Sorts other than the default "U" are written as annotations.
    """
    return _fmt(phi)[0]


def signature_of(phi: Formula) -> Signature:
    """
    Signature read off the atoms of a formula.

    Raises:
        SignatureError: the same symbol is used with two different arities
    """
    relations: dict[str, tuple[str, ...]] = {}
    sorts: set[str] = set()
    for node in _atoms_and_binders(phi):
        if isinstance(node, Atom):
            arity = tuple(v.sort for v in node.args)
            known = relations.setdefault(node.symbol, arity)
            if known != arity:
                raise SignatureError(
                    f"relation {node.symbol} used with arities {list(known)} and {list(arity)}",
                    context={"relation": node.symbol},
                )
            sorts.update(arity)
        else:
            sorts.update(v.sort for v in node.variables)
    return Signature(sorts=frozenset(sorts), relations=relations)


def _atoms_and_binders(phi: Formula):
    for _, node in walk(phi):
        if isinstance(node, (Atom, Quant)):
            yield node
