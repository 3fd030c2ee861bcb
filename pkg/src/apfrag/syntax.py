"""Sorted terms and formulas over arrays and integers, extended with ``diff``.

Everything here is immutable. Applications are rank-checked on construction,
and quantifier blocks refuse to shadow a name that is already bound, so any
value that exists is well-sorted and free of capture.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ShadowingError, SortError

__all__ = [
    "Sort", "INT", "BOOL", "ARRAY", "FuncSymbol", "int_const", "array_const",
    "PLUS", "MINUS", "TIMES", "LT", "LE", "EQ", "EQ_ARRAY", "SELECT", "STORE", "DIFF",
    "THEORY_SYMBOLS", "Term", "IntLit", "BoolLit", "Const", "Var", "App",
    "Formula", "Atom", "Not", "And", "Or", "Implies", "Forall", "TRUE", "FALSE",
    "build_term", "select", "store", "diff", "plus", "minus", "times", "lt", "le", "eq",
    "not_", "and_", "or_", "implies", "forall", "lit",
    "free_symbols", "free_vars", "substitute", "size", "check_well_formed",
    "is_ground", "subterms", "SymbolPartition",
]


@dataclass(frozen=True)
class Sort:
    name: str
    index: "Sort | None" = None
    element: "Sort | None" = None

    def __str__(self):
        if self.name == "Array":
            return f"(Array {self.index} {self.element})"
        return self.name


INT = Sort("Int")
BOOL = Sort("Bool")
ARRAY = Sort("Array", INT, INT)


@dataclass(frozen=True)
class FuncSymbol:
    """A ranked function symbol. ``theory`` marks interpreted symbols."""

    name: str
    arg_sorts: tuple
    result: Sort
    theory: bool = False

    def __str__(self):
        return self.name


def int_const(name: str) -> FuncSymbol:
    return FuncSymbol(name, (), INT)


def array_const(name: str) -> FuncSymbol:
    return FuncSymbol(name, (), ARRAY)


PLUS = FuncSymbol("+", (INT, INT), INT, True)
MINUS = FuncSymbol("-", (INT, INT), INT, True)
TIMES = FuncSymbol("*", (INT, INT), INT, True)
LT = FuncSymbol("<", (INT, INT), BOOL, True)
LE = FuncSymbol("<=", (INT, INT), BOOL, True)
EQ = FuncSymbol("=", (INT, INT), BOOL, True)
# Extensional array equality; shares the name "=" with the integer predicate.
EQ_ARRAY = FuncSymbol("=", (ARRAY, ARRAY), BOOL, True)
SELECT = FuncSymbol("select", (ARRAY, INT), INT, True)
STORE = FuncSymbol("store", (ARRAY, INT, INT), ARRAY, True)
DIFF = FuncSymbol("diff", (ARRAY, ARRAY), INT, True)

THEORY_SYMBOLS = (PLUS, MINUS, TIMES, LT, LE, EQ, EQ_ARRAY, SELECT, STORE, DIFF)
ARITH_SYMBOLS = frozenset({PLUS, MINUS, TIMES})
PREDICATES = frozenset({LT, LE, EQ, EQ_ARRAY})


class Term:
    __slots__ = ()

    @property
    def sort(self) -> Sort:
        raise NotImplementedError

    def __str__(self):
        from .smtlib import format_term
        return format_term(self)


@dataclass(frozen=True)
class IntLit(Term):
    value: int

    @property
    def sort(self):
        return INT


@dataclass(frozen=True)
class BoolLit(Term):
    value: bool

    @property
    def sort(self):
        return BOOL


@dataclass(frozen=True)
class Const(Term):
    symbol: FuncSymbol

    def __post_init__(self):
        if self.symbol.arg_sorts or self.symbol.theory:
            raise SortError(f"{self.symbol.name} is not a free constant")

    @property
    def sort(self):
        return self.symbol.result

    @property
    def name(self):
        return self.symbol.name


@dataclass(frozen=True)
class Var(Term):
    name: str
    var_sort: Sort = INT

    @property
    def sort(self):
        return self.var_sort


@dataclass(frozen=True)
class App(Term):
    symbol: FuncSymbol
    args: tuple

    def __post_init__(self):
        expected = self.symbol.arg_sorts
        if len(self.args) != len(expected):
            raise SortError(
                f"{self.symbol.name} expects {len(expected)} arguments, got {len(self.args)}",
                position=min(len(self.args), len(expected)),
            )
        for pos, (arg, want) in enumerate(zip(self.args, expected)):
            if not isinstance(arg, Term):
                raise SortError(f"argument {pos} of {self.symbol.name} is not a term", position=pos)
            if arg.sort != want:
                raise SortError(
                    f"argument {pos} of {self.symbol.name} has sort {arg.sort}, expected {want}",
                    position=pos,
                )

    @property
    def sort(self):
        return self.symbol.result


class Formula:
    __slots__ = ()

    def __str__(self):
        from .smtlib import format_formula
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    term: Term

    def __post_init__(self):
        if self.term.sort != BOOL:
            raise SortError(f"atom must have sort Bool, got {self.term.sort}")


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Forall(Formula):
    vars: tuple
    body: Formula

    def __post_init__(self):
        if not self.vars:
            raise ValueError("quantifier block must bind at least one variable")
        names = [v.name for v in self.vars]
        if len(set(names)) != len(names):
            raise ShadowingError(f"duplicate bound variable in block {names}")
        for v in self.vars:
            if not isinstance(v, Var) or v.sort != INT:
                raise SortError(f"bound variable {v} must have sort Int")
        _check_binders(self.body, frozenset(names))


TRUE = Atom(BoolLit(True))
FALSE = Atom(BoolLit(False))

Node = Union[Term, Formula]


def _check_binders(f: Formula, bound: frozenset) -> None:
    if isinstance(f, Forall):
        clash = bound.intersection(v.name for v in f.vars)
        if clash:
            raise ShadowingError(f"variable {sorted(clash)[0]!r} is rebound inside its own scope")
        _check_binders(f.body, bound)
    elif isinstance(f, Not):
        _check_binders(f.arg, bound)
    elif isinstance(f, (And, Or)):
        for g in f.args:
            _check_binders(g, bound)
    elif isinstance(f, Implies):
        _check_binders(f.lhs, bound)
        _check_binders(f.rhs, bound)


# -- constructors -------------------------------------------------------------

def build_term(symbol: FuncSymbol, args) -> Term:
    """Rank-checked application; raises :class:`SortError` naming the bad position."""
    if not symbol.arg_sorts:
        if args:
            raise SortError(f"{symbol.name} is a constant", position=0)
        return Const(symbol)
    return App(symbol, tuple(args))


def _coerce(x) -> Term:
    if isinstance(x, bool):
        return BoolLit(x)
    if isinstance(x, int):
        return IntLit(x)
    if isinstance(x, FuncSymbol):
        return Const(x)
    return x


def lit(value: int) -> IntLit:
    return IntLit(value)


def select(arr, idx) -> App:
    return App(SELECT, (_coerce(arr), _coerce(idx)))


def store(arr, idx, val) -> App:
    return App(STORE, (_coerce(arr), _coerce(idx), _coerce(val)))


def diff(s, t) -> App:
    return App(DIFF, (_coerce(s), _coerce(t)))


def plus(x, y) -> App:
    return App(PLUS, (_coerce(x), _coerce(y)))


def minus(x, y) -> App:
    return App(MINUS, (_coerce(x), _coerce(y)))


def times(x, y) -> App:
    return App(TIMES, (_coerce(x), _coerce(y)))


def lt(x, y) -> Atom:
    return Atom(App(LT, (_coerce(x), _coerce(y))))


def le(x, y) -> Atom:
    return Atom(App(LE, (_coerce(x), _coerce(y))))


def eq(x, y) -> Atom:
    x, y = _coerce(x), _coerce(y)
    symbol = EQ_ARRAY if x.sort == ARRAY else EQ
    return Atom(App(symbol, (x, y)))


def not_(f: Formula) -> Not:
    return Not(f)


def and_(*fs: Formula) -> Formula:
    if len(fs) == 1:
        return fs[0]
    return And(tuple(fs)) if fs else TRUE


def or_(*fs: Formula) -> Formula:
    if len(fs) == 1:
        return fs[0]
    return Or(tuple(fs)) if fs else FALSE


def implies(lhs: Formula, rhs: Formula) -> Implies:
    return Implies(lhs, rhs)


def forall(variables, body: Formula) -> Forall:
    if isinstance(variables, Var):
        variables = (variables,)
    return Forall(tuple(variables), body)


# -- traversal ----------------------------------------------------------------

def children(node: Node) -> tuple:
    if isinstance(node, App):
        return node.args
    if isinstance(node, Atom):
        return (node.term,)
    if isinstance(node, Not):
        return (node.arg,)
    if isinstance(node, (And, Or)):
        return node.args
    if isinstance(node, Implies):
        return (node.lhs, node.rhs)
    if isinstance(node, Forall):
        return (node.body,)
    return ()


def subterms(node: Node) -> Iterator[Term]:
    """Pre-order iteration over every term occurring in ``node``."""
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Term):
            yield n
        stack.extend(reversed(children(n)))


def size(node: Node) -> int:
    """Number of AST nodes. Atoms and binder lists are not counted separately."""
    if isinstance(node, Atom):
        return size(node.term)
    return 1 + sum(size(c) for c in children(node))


def free_vars(node: Node) -> frozenset:
    """Names of variables occurring outside any binder for them."""
    if isinstance(node, Var):
        return frozenset((node.name,))
    if isinstance(node, Forall):
        return free_vars(node.body) - {v.name for v in node.vars}
    out = frozenset()
    for c in children(node):
        out |= free_vars(c)
    return out


def is_ground(node: Node) -> bool:
    """True when no variable occurs, bound or free."""
    return not any(isinstance(t, Var) for t in subterms(node))


def free_symbols(node: Node) -> frozenset:
    """Uninterpreted constant symbols occurring in ``node``."""
    return frozenset(t.symbol for t in subterms(node) if isinstance(t, Const))


def check_well_formed(node: Node) -> None:
    """Recursive validator: rank-correct, Bool atoms, no shadowing.

    Construction already enforces all of this; the validator exists so that
    tests can audit values produced by transformations.
    """
    def walk(n, bound):
        if isinstance(n, App):
            App(n.symbol, n.args)
        elif isinstance(n, Atom):
            Atom(n.term)
        elif isinstance(n, Var):
            if n.sort != INT:
                raise SortError(f"variable {n.name} must have sort Int")
        elif isinstance(n, Forall):
            names = {v.name for v in n.vars}
            if names & bound:
                raise ShadowingError(f"rebinding of {sorted(names & bound)[0]!r}")
            bound = bound | names
        for c in children(n):
            walk(c, bound)

    walk(node, frozenset())


def substitute(node: Node, var: Var, term: Term) -> Node:
    """Replace free occurrences of ``var`` by the ground ``term``."""
    if not is_ground(term):
        raise ValueError("substituted term must be ground")
    if term.sort != var.sort:
        raise SortError(f"cannot substitute {term.sort} term for {var.sort} variable {var.name}")
    return _subst(node, var.name, term)


def _subst(n, name, term):
    if isinstance(n, Var):
        return term if n.name == name else n
    if isinstance(n, (IntLit, BoolLit, Const)):
        return n
    if isinstance(n, App):
        return App(n.symbol, tuple(_subst(a, name, term) for a in n.args))
    if isinstance(n, Atom):
        return Atom(_subst(n.term, name, term))
    if isinstance(n, Not):
        return Not(_subst(n.arg, name, term))
    if isinstance(n, And):
        return And(tuple(_subst(a, name, term) for a in n.args))
    if isinstance(n, Or):
        return Or(tuple(_subst(a, name, term) for a in n.args))
    if isinstance(n, Implies):
        return Implies(_subst(n.lhs, name, term), _subst(n.rhs, name, term))
    if isinstance(n, Forall):
        if any(v.name == name for v in n.vars):
            raise ShadowingError(f"variable {name!r} is rebound below the substitution point")
        return Forall(n.vars, _subst(n.body, name, term))
    raise TypeError(f"not a term or formula: {n!r}")


@dataclass(frozen=True)
class SymbolPartition:
    """Free symbols of an interpolation problem split by the side they occur on.

    Theory symbols are not stored; :meth:`is_shared` treats them as shared.
    """

    shared: frozenset = field(default_factory=frozenset)
    a_local: frozenset = field(default_factory=frozenset)
    b_local: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, a: Formula, b: Formula) -> "SymbolPartition":
        sa, sb = free_symbols(a), free_symbols(b)
        return cls(sa & sb, sa - sb, sb - sa)

    def is_shared(self, symbol: FuncSymbol) -> bool:
        return symbol.theory or symbol in self.shared
