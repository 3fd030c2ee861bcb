"""Exact evaluation of ground terms and fragment formulas over models.

A quantifier block is decided over a finite instantiation set. Every
array read under the block is a FinArray, so it is constant outside its
window. Bound variables reach the body only through such reads and
through guard comparisons, so ``Z`` splits into finitely many stretches
on which the body cannot tell points apart. Enough points from each
stretch are kept to also preserve the order among the bound variables.

:func:`brute_force_eval` evaluates the same formulas over a plain integer
interval with a separate recursive evaluator. It is the test oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import ir, kernel
from . import syntax as sx
from .errors import InsufficientBoundError, NotInFragmentError
from .fragment import is_in_fragment, split_property
from .models import FinArray, Model, diff_index

__all__ = [
    "eval_term", "eval_formula", "decide_property", "instantiation_set",
    "instantiation_points", "InstantiationSet", "brute_force_eval", "compile_property",
]


# -- terms --------------------------------------------------------------------

def eval_term(model: Model, t: sx.Term, env=None, cache=None):
    """Value of ``t``: an int, a bool or a FinArray.

    ``env`` binds variable names to integers. ``cache`` maps ``id(term)`` to
    precomputed values and is consulted before recursing.
    """
    if cache is not None:
        hit = cache.get(id(t))
        if hit is not None:
            return hit
    if isinstance(t, sx.IntLit):
        return t.value
    if isinstance(t, sx.Const):
        if t.sort == sx.ARRAY:
            return model.array_value(t.symbol.name)
        return model.int_value(t.symbol.name)
    if isinstance(t, sx.Var):
        if env is None or t.name not in env:
            raise ValueError(f"unbound variable {t.name}")
        return env[t.name]
    if isinstance(t, sx.BoolLit):
        return t.value
    args = [eval_term(model, a, env, cache) for a in t.args]
    sym = t.symbol
    if sym == sx.SELECT:
        return args[0].read(args[1])
    if sym == sx.STORE:
        return args[0].store(args[1], args[2])
    if sym == sx.DIFF:
        return diff_index(args[0], args[1])
    if sym == sx.PLUS:
        return args[0] + args[1]
    if sym == sx.MINUS:
        return args[0] - args[1]
    if sym == sx.TIMES:
        return args[0] * args[1]
    if sym == sx.LT:
        return args[0] < args[1]
    if sym == sx.LE:
        return args[0] <= args[1]
    if sym == sx.EQ or sym == sx.EQ_ARRAY:
        return args[0] == args[1]
    raise ValueError(f"no interpretation for {sym.name}")


def _eval_ground(model, f):
    if isinstance(f, sx.Atom):
        return bool(eval_term(model, f.term))
    if isinstance(f, sx.Not):
        return not _eval_ground(model, f.arg)
    if isinstance(f, sx.And):
        return all(_eval_ground(model, g) for g in f.args)
    if isinstance(f, sx.Or):
        return any(_eval_ground(model, g) for g in f.args)
    if isinstance(f, sx.Implies):
        return (not _eval_ground(model, f.lhs)) or _eval_ground(model, f.rhs)
    raise TypeError(f"not a quantifier-free formula: {f!r}")


# -- compilation of a quantifier block ---------------------------------------

@dataclass(frozen=True)
class CompiledProperty:
    names: tuple
    program: tuple
    const_nodes: tuple      # ground terms/formulas feeding CONST slots
    array_terms: tuple      # ground array terms read at bound variables
    guard_terms: tuple      # ground sides of guard literals on bound variables


_OPS = {sx.PLUS: ir.ADD, sx.MINUS: ir.SUB, sx.TIMES: ir.MUL,
        sx.LT: ir.LT, sx.LE: ir.LE, sx.EQ: ir.EQ}


class _Compiler:
    def __init__(self, names):
        self.var_pos = {n: k for k, n in enumerate(names)}
        self.consts = {}
        self.arrays = {}
        self.code = []

    def _mentions(self, node):
        return any(isinstance(t, sx.Var) and t.name in self.var_pos for t in sx.subterms(node))

    def _const(self, node):
        slot = self.consts.setdefault(node, len(self.consts))
        self.code.append((ir.CONST, slot, 0))

    def term(self, t):
        if not self._mentions(t):
            self._const(t)
        elif isinstance(t, sx.Var):
            self.code.append((ir.VAR, self.var_pos[t.name], 0))
        elif t.symbol == sx.SELECT and isinstance(t.args[1], sx.Var) and not self._mentions(t.args[0]):
            row = self.arrays.setdefault(t.args[0], len(self.arrays))
            self.code.append((ir.READ, row, self.var_pos[t.args[1].name]))
        elif t.symbol in _OPS:
            self.term(t.args[0])
            self.term(t.args[1])
            self.code.append((_OPS[t.symbol], 0, 0))
        else:
            raise ValueError(f"bound variable in unsupported position: {t}")

    def formula(self, f):
        if not self._mentions(f):
            self._const(f)
        elif isinstance(f, sx.Atom):
            self.term(f.term)
        elif isinstance(f, sx.Not):
            self.formula(f.arg)
            self.code.append((ir.NOT, 0, 0))
        elif isinstance(f, (sx.And, sx.Or)):
            for g in f.args:
                self.formula(g)
            self.code.append((ir.AND if isinstance(f, sx.And) else ir.OR, len(f.args), 0))
        elif isinstance(f, sx.Implies):
            self.formula(f.lhs)
            self.formula(f.rhs)
            self.code.append((ir.IMPLIES, 0, 0))
        else:
            raise TypeError(f"unexpected node in quantifier body: {f!r}")


def _guard_terms(guard, names):
    out = []
    for t in sx.subterms(guard):
        if isinstance(t, sx.App) and t.symbol in (sx.LE, sx.EQ, sx.LT):
            for side in t.args:
                if not any(isinstance(u, sx.Var) and u.name in names for u in sx.subterms(side)):
                    if any(isinstance(u, sx.Var) and u.name in names for u in sx.subterms(t)):
                        out.append(side)
    return tuple(dict.fromkeys(out))


@lru_cache(maxsize=16384)
def compile_property(f: sx.Forall) -> CompiledProperty:
    names = tuple(v.name for v in f.vars)
    guard, _ = split_property(f)
    comp = _Compiler(names)
    comp.formula(f.body)
    return CompiledProperty(
        names=names,
        program=tuple(comp.code),
        const_nodes=tuple(comp.consts),
        array_terms=tuple(comp.arrays),
        guard_terms=_guard_terms(guard, set(names)),
    )


# -- instantiation sets -------------------------------------------------------

@dataclass(frozen=True)
class InstantiationSet:
    """Points each bound variable of one block ranges over (shared by all)."""

    variables: tuple
    points: tuple

    def tuples(self):
        return itertools.product(self.points, repeat=len(self.variables))

    def __len__(self):
        return len(self.points)


def instantiation_points(arrays, guard_values, nvars: int, extra=()) -> tuple:
    """Sorted instantiation points for a block of ``nvars`` variables.

    Contains every window index of ``arrays``, every guard value and its two
    neighbours, ``nvars`` sentinels beyond each end, and the first ``nvars``
    points of every gap between consecutive window indices and guard values
    so that each stretch with a fixed read profile is represented.
    """
    n = max(nvars, 1)
    base = set(extra)
    for arr in arrays:
        base.update(arr.breakpoints())
    base.update(guard_values)
    if not base:
        return tuple(range(-n, 0)) + tuple(range(1, n + 1))
    ordered = sorted(base)
    out = set(ordered)
    for g in guard_values:
        out.add(g - 1)
        out.add(g + 1)
    for p, q in zip(ordered, ordered[1:]):
        out.update(range(p + 1, min(q, p + 1 + n)))
    lo, hi = ordered[0], ordered[-1]
    out.update(range(lo - n, lo))
    out.update(range(hi + 1, hi + n + 1))
    return tuple(sorted(out))


def _prepare(model, comp):
    consts = []
    for node in comp.const_nodes:
        if isinstance(node, sx.Term):
            consts.append(eval_term(model, node))
        else:
            consts.append(_eval_ground(model, node))
    arrays = [eval_term(model, t) for t in comp.array_terms]
    guards = [eval_term(model, t) for t in comp.guard_terms]
    return consts, arrays, guards


def instantiation_set(model: Model, phi: sx.Forall) -> InstantiationSet:
    comp = compile_property(phi)
    _, arrays, guards = _prepare(model, comp)
    return InstantiationSet(comp.names, instantiation_points(arrays, guards, len(comp.names)))


# -- formulas -----------------------------------------------------------------

def decide_property(model: Model, phi: sx.Forall, points=None):
    """``(holds, counterexample)`` for one quantifier block.

    ``counterexample`` maps each bound variable to an integer when the block
    is false. ``points`` replaces the computed instantiation set.
    """
    comp = compile_property(phi)
    consts, arrays, guards = _prepare(model, comp)
    if points is None:
        points = instantiation_points(arrays, guards, len(comp.names))
    rows = [[arr.read(p) for p in points] for arr in arrays]
    flat = kernel.first_failure(comp.program, consts, points, rows, len(comp.names))
    if flat < 0:
        return True, None
    n = len(points)
    digits = []
    for _ in comp.names:
        flat, r = divmod(flat, n)
        digits.append(points[r])
    return False, dict(zip(comp.names, reversed(digits)))


def _eval(model, f):
    if isinstance(f, sx.Forall):
        return decide_property(model, f)[0]
    if isinstance(f, sx.Atom):
        return bool(eval_term(model, f.term))
    if isinstance(f, sx.Not):
        return not _eval(model, f.arg)
    if isinstance(f, sx.And):
        return all(_eval(model, g) for g in f.args)
    if isinstance(f, sx.Or):
        return any(_eval(model, g) for g in f.args)
    if isinstance(f, sx.Implies):
        return (not _eval(model, f.lhs)) or _eval(model, f.rhs)
    raise TypeError(f"not a formula: {f!r}")


def eval_formula(model: Model, f: sx.Formula, *, check=True) -> bool:
    """Truth value of a fragment formula in ``model``.

    Formulas outside the fragment are refused, since the finite
    instantiation argument does not cover them.
    """
    if check:
        verdict = is_in_fragment(f, rewrite_strict=True)
        if not verdict:
            raise NotInFragmentError(verdict)
    return _eval(model, f)


# -- brute-force oracle -------------------------------------------------------

def _blocks(f):
    if isinstance(f, sx.Forall):
        yield f
    else:
        for g in sx.children(f):
            if isinstance(g, sx.Formula):
                yield from _blocks(g)


def _required_span(model, f):
    """Smallest bound the oracle needs for the blocks of ``f``."""
    need = 0
    for block in _blocks(f):
        names = {v.name for v in block.vars}
        n = len(names)
        marks = []
        for t in sx.subterms(block.body):
            if isinstance(t, sx.App) and t.symbol == sx.SELECT and isinstance(t.args[1], sx.Var) \
                    and t.args[1].name in names:
                marks.extend(eval_term(model, t.args[0]).breakpoints())
        guard, _ = split_property(block)
        marks.extend(eval_term(model, t) for t in _guard_terms(guard, names))
        for x in marks:
            need = max(need, abs(x) + n)
    return need


def _brute(model, f, env, bound, cache):
    if isinstance(f, sx.Forall):
        names = [v.name for v in f.vars]
        for values in itertools.product(range(-bound, bound + 1), repeat=len(names)):
            inner = dict(env)
            inner.update(zip(names, values))
            if not _brute(model, f.body, inner, bound, cache):
                return False
        return True
    if isinstance(f, sx.Atom):
        return bool(eval_term(model, f.term, env, cache))
    if isinstance(f, sx.Not):
        return not _brute(model, f.arg, env, bound, cache)
    if isinstance(f, sx.And):
        return all(_brute(model, g, env, bound, cache) for g in f.args)
    if isinstance(f, sx.Or):
        return any(_brute(model, g, env, bound, cache) for g in f.args)
    if isinstance(f, sx.Implies):
        return (not _brute(model, f.lhs, env, bound, cache)) or _brute(model, f.rhs, env, bound, cache)
    raise TypeError(f"not a formula: {f!r}")


def _ground_cache(model, f):
    cache = {}

    def visit(node):
        if isinstance(node, sx.Term):
            if not any(isinstance(u, sx.Var) for u in sx.subterms(node)):
                value = eval_term(model, node)
                if value is not None:
                    cache[id(node)] = value
                return
        for c in sx.children(node):
            visit(c)

    visit(f)
    return cache


def brute_force_eval(model: Model, f: sx.Formula, bound: int) -> bool:
    """Evaluate ``f`` with every quantifier ranging over ``[-bound, bound]``.

    Raises :class:`InsufficientBoundError` when the interval does not cover
    the windows and guard values involved with room to spare on each side.
    """
    verdict = is_in_fragment(f, rewrite_strict=True)
    if not verdict:
        raise NotInFragmentError(verdict)
    need = _required_span(model, f)
    if bound < need:
        raise InsufficientBoundError(f"bound {bound} too small, need at least {need}")
    return _brute(model, f, {}, bound, _ground_cache(model, f))
