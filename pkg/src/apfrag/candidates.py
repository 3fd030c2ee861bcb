"""Bounded, duplicate-free enumeration of shared fragment formulas.

Formulas are grown bottom-up by AST size (see :func:`apfrag.syntax.size`)
over the shared signature of the example: the arrays ``a`` and ``b``,
integer literals from a small pool, ``select``, ``store``, optionally
``diff``, ``+``, ``-``, ``<``, ``<=``, ``=``, the Boolean connectives, and
single universal blocks whose guards follow the fragment grammar. Every
node goes through a fixed canonicalization before it is stored:

* literal arithmetic and literal comparisons are folded, and ``x + 0``,
  ``x - 0`` and ``x - x`` are simplified;
* ``diff(t, t)`` is 0; ``t = t`` and ``t <= t`` are true; ``t < t`` is false;
* ``and``/``or`` are flattened, absorb true/false, drop repeats and sort
  their arguments; ``+`` and ``=`` sort theirs;
* double negation and implications with a constant side are simplified;
* block variables are named ``j0, j1, ...`` and the smallest renaming wins.

A node is dropped when its canonical printing was seen before, so the
stream never repeats a formula. The size attached to a node is the size of
the first construction that produced it.
"""
from __future__ import annotations

import itertools
from collections import defaultdict

from . import syntax as sx
from .fragment import is_in_fragment
from .smtlib import format_formula, format_term

__all__ = ["enumerate_candidates", "DEFAULT_LITERALS", "canonical_and", "canonical_or",
           "canonical_not", "canonical_implies", "canonical_pred", "canonical_arith"]

DEFAULT_LITERALS = tuple(range(-2, 3))

_A = sx.Const(sx.array_const("a"))
_B = sx.Const(sx.array_const("b"))


def _key(node):
    return format_term(node) if isinstance(node, sx.Term) else format_formula(node)


# -- canonicalizing constructors ---------------------------------------------

def canonical_arith(sym, x, y):
    if isinstance(x, sx.IntLit) and isinstance(y, sx.IntLit):
        if sym == sx.PLUS:
            return sx.IntLit(x.value + y.value)
        if sym == sx.MINUS:
            return sx.IntLit(x.value - y.value)
        return sx.IntLit(x.value * y.value)
    zero = sx.IntLit(0)
    if sym == sx.PLUS and x == zero:
        return y
    if sym in (sx.PLUS, sx.MINUS) and y == zero:
        return x
    if sym == sx.MINUS and x == y:
        return zero
    if sym in (sx.PLUS, sx.TIMES) and _key(y) < _key(x):
        x, y = y, x
    return sx.App(sym, (x, y))


def canonical_diff(s, t):
    if s == t:
        return sx.IntLit(0)
    return sx.App(sx.DIFF, (s, t))


def canonical_pred(sym, x, y):
    if isinstance(x, sx.IntLit) and isinstance(y, sx.IntLit):
        value = {sx.LT: x.value < y.value, sx.LE: x.value <= y.value, sx.EQ: x.value == y.value}[sym]
        return sx.TRUE if value else sx.FALSE
    if x == y:
        return sx.FALSE if sym == sx.LT else sx.TRUE
    if sym in (sx.EQ, sx.EQ_ARRAY) and _key(y) < _key(x):
        x, y = y, x
    return sx.Atom(sx.App(sym, (x, y)))


def canonical_not(f):
    if f == sx.TRUE:
        return sx.FALSE
    if f == sx.FALSE:
        return sx.TRUE
    if isinstance(f, sx.Not):
        return f.arg
    return sx.Not(f)


def _junction(cls, unit, zero, fs):
    flat = []
    for f in fs:
        flat.extend(f.args if isinstance(f, cls) else (f,))
    out = {}
    for f in flat:
        if f == zero:
            return zero
        if f != unit:
            out.setdefault(_key(f), f)
    if not out:
        return unit
    if len(out) == 1:
        return next(iter(out.values()))
    return cls(tuple(out[k] for k in sorted(out)))


def canonical_and(*fs):
    return _junction(sx.And, sx.TRUE, sx.FALSE, fs)


def canonical_or(*fs):
    return _junction(sx.Or, sx.FALSE, sx.TRUE, fs)


def canonical_implies(x, y):
    if x == sx.TRUE:
        return y
    if x == sx.FALSE or y == sx.TRUE or x == y:
        return sx.TRUE
    if y == sx.FALSE:
        return canonical_not(x)
    return sx.Implies(x, y)


def _rename(f, mapping):
    if isinstance(f, sx.Var):
        return sx.Var(mapping.get(f.name, f.name))
    if isinstance(f, (sx.IntLit, sx.BoolLit, sx.Const)):
        return f
    if isinstance(f, sx.App):
        return sx.App(f.symbol, tuple(_rename(a, mapping) for a in f.args))
    if isinstance(f, sx.Atom):
        return sx.Atom(_rename(f.term, mapping))
    if isinstance(f, sx.Not):
        return sx.Not(_rename(f.arg, mapping))
    if isinstance(f, (sx.And, sx.Or)):
        return type(f)(tuple(_rename(g, mapping) for g in f.args))
    if isinstance(f, sx.Implies):
        return sx.Implies(_rename(f.lhs, mapping), _rename(f.rhs, mapping))
    raise TypeError(f"unexpected node {f!r}")


def _recanon(f):
    """Re-run the formula-level canonicalization after a renaming."""
    if isinstance(f, sx.Atom):
        t = f.term
        if isinstance(t, sx.App) and t.symbol in (sx.EQ, sx.EQ_ARRAY, sx.LT, sx.LE):
            return canonical_pred(t.symbol, _recanon_term(t.args[0]), _recanon_term(t.args[1]))
        return f
    if isinstance(f, sx.Not):
        return canonical_not(_recanon(f.arg))
    if isinstance(f, sx.And):
        return canonical_and(*(_recanon(g) for g in f.args))
    if isinstance(f, sx.Or):
        return canonical_or(*(_recanon(g) for g in f.args))
    if isinstance(f, sx.Implies):
        return canonical_implies(_recanon(f.lhs), _recanon(f.rhs))
    return f


def _recanon_term(t):
    if isinstance(t, sx.App) and t.symbol in (sx.PLUS, sx.MINUS, sx.TIMES):
        return canonical_arith(t.symbol, _recanon_term(t.args[0]), _recanon_term(t.args[1]))
    return t


def canonical_forall(names, body):
    """Block over ``names``; None when the body does not use every variable
    or the block falls outside the fragment."""
    used = {t.name for t in sx.subterms(body) if isinstance(t, sx.Var)}
    if used != set(names):
        return None
    best = None
    for perm in itertools.permutations(names):
        mapping = dict(zip(names, perm))
        renamed = _recanon(_rename(body, mapping)) if perm != tuple(names) else body
        block = sx.Forall(tuple(sx.Var(n) for n in sorted(names)), renamed)
        if best is None or _key(block) < _key(best):
            best = block
    if not is_in_fragment(best):
        return None
    return best


# -- enumeration --------------------------------------------------------------

class _Table:
    """Nodes of one category indexed by size, deduplicated by printing."""

    def __init__(self):
        self.by_size = defaultdict(list)
        self.seen = set()

    def add(self, s, node):
        k = _key(node)
        if k in self.seen:
            return False
        self.seen.add(k)
        self.by_size[s].append(node)
        return True

    def __getitem__(self, s):
        return self.by_size.get(s, ())


def _splits(total, parts=2, minimum=1):
    """Tuples of ``parts`` positive sizes adding up to ``total``."""
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _splits(total - first, parts - 1, minimum):
            yield (first,) + rest


def _mentions_var(node):
    return any(isinstance(t, sx.Var) for t in sx.subterms(node))


def _has_forall(f):
    return isinstance(f, sx.Forall) or any(
        _has_forall(g) for g in sx.children(f) if isinstance(g, sx.Formula))


def enumerate_candidates(size_bound: int, *, include_diff: bool = True,
                         literals=DEFAULT_LITERALS, max_block_vars: int = 2):
    """Yield every canonical shared fragment formula of size at most
    ``size_bound``, smallest first, without repeats."""
    if size_bound < 1:
        raise ValueError("size bound must be at least 1")
    gi, ga, gq, gf = _Table(), _Table(), _Table(), _Table()   # ground int/array/QF formula, closed formula
    blocks = {}
    for k in range(1, max_block_vars + 1):
        names = tuple(f"j{m}" for m in range(k))
        blocks[k] = {
            "names": names,
            "vars": tuple(sx.Var(n) for n in names),
            "oi": _Table(),      # integer terms reading arrays at block variables
            "of": _Table(),      # value-constraint formulas mentioning block variables
            "gg": _Table(),      # guards mentioning block variables
            "body": _Table(),
        }

    preds = (sx.LT, sx.LE, sx.EQ)
    for s in range(1, size_bound + 1):
        # ground integer and array terms
        if s == 1:
            for v in literals:
                gi.add(1, sx.IntLit(v))
            ga.add(1, _A)
            ga.add(1, _B)
        for s1, s2 in _splits(s - 1):
            for x in gi[s1]:
                for y in gi[s2]:
                    for sym in (sx.PLUS, sx.MINUS):
                        gi.add(s, canonical_arith(sym, x, y))
            for arr in ga[s1]:
                for idx in gi[s2]:
                    gi.add(s, sx.App(sx.SELECT, (arr, idx)))
            if include_diff:
                for x in ga[s1]:
                    for y in ga[s2]:
                        gi.add(s, canonical_diff(x, y))
        for s1, s2, s3 in _splits(s - 1, 3):
            for arr in ga[s1]:
                for idx in gi[s2]:
                    for val in gi[s3]:
                        ga.add(s, sx.App(sx.STORE, (arr, idx, val)))

        # ground quantifier-free formulas
        if s == 1:
            gq.add(1, sx.TRUE)
            gq.add(1, sx.FALSE)
        for s1, s2 in _splits(s - 1):
            for x in gi[s1]:
                for y in gi[s2]:
                    for sym in preds:
                        _add_formula(gq, s, canonical_pred(sym, x, y))
            for x in ga[s1]:
                for y in ga[s2]:
                    _add_formula(gq, s, canonical_pred(sx.EQ_ARRAY, x, y))
        _boolean_layer(gq, gq, s, require=None)

        # open material inside blocks
        for blk in blocks.values():
            _block_layer(blk, s, gi, ga, gq, preds)

        # closed formulas: ground ones, blocks, and Boolean combinations
        for f in gq[s]:
            gf.add(s, f)
        for k, blk in blocks.items():
            for body in blk["body"][s - 1]:
                block = canonical_forall(blk["names"], body)
                if block is not None:
                    gf.add(s, block)
        _boolean_layer(gf, gf, s, require=_has_forall)
        for f in gf[s]:
            yield f


def _add_formula(table, s, f, require=None):
    if require is None or require(f):
        table.add(s, f)


def _boolean_layer(out, source, s, require, extra=None):
    """Add not/and/or/=> combinations of total size ``s`` to ``out``.

    ``require`` filters results (e.g. must contain a block); operands come
    from ``source`` and, if given, ``extra``.
    """
    pools = [source] + ([extra] if extra is not None else [])

    def operands(size):
        for p in pools:
            yield from p[size]

    for f in source[s - 1]:
        _add_formula(out, s, canonical_not(f), require)
    for s1, s2 in _splits(s - 1):
        for x in operands(s1):
            for y in operands(s2):
                _add_formula(out, s, canonical_and(x, y), require)
                _add_formula(out, s, canonical_or(x, y), require)
                _add_formula(out, s, canonical_implies(x, y), require)


def _block_layer(blk, s, gi, ga, gq, preds):
    vs = blk["vars"]
    oi, of, gg, body = blk["oi"], blk["of"], blk["gg"], blk["body"]

    def ints(size):
        yield from gi[size]
        yield from oi[size]

    for arr in ga[s - 2] if s >= 3 else ():
        for v in vs:
            oi.add(s, sx.App(sx.SELECT, (arr, v)))
    for s1, s2 in _splits(s - 1):
        for x in ints(s1):
            for y in ints(s2):
                if not (_mentions_var(x) or _mentions_var(y)):
                    continue
                for sym in (sx.PLUS, sx.MINUS):
                    oi.add(s, canonical_arith(sym, x, y))
                for sym in preds:
                    f = canonical_pred(sym, x, y)
                    if _mentions_var(f):
                        of.add(s, f)

    # value constraints: Boolean structure over open atoms and ground formulas
    for f in of[s - 1]:
        _add_formula(of, s, canonical_not(f), _mentions_var)
    for s1, s2 in _splits(s - 1):
        for x in itertools.chain(of[s1], gq[s1]):
            for y in itertools.chain(of[s2], gq[s2]):
                if not (_mentions_var(x) or _mentions_var(y)):
                    continue
                for f in (canonical_and(x, y), canonical_or(x, y), canonical_implies(x, y)):
                    _add_formula(of, s, f, _mentions_var)

    # guards: positive and/or over variable literals and ground formulas
    for v in vs:
        for t in gi[s - 2] if s >= 3 else ():
            gg.add(s, canonical_pred(sx.LE, v, t))
            gg.add(s, canonical_pred(sx.LE, t, v))
            gg.add(s, canonical_pred(sx.EQ, v, t))
    if s == 3:
        for v, w in itertools.permutations(vs, 2):
            gg.add(s, canonical_pred(sx.LE, v, w))
            gg.add(s, canonical_pred(sx.EQ, v, w))
    for s1, s2 in _splits(s - 1):
        for x in itertools.chain(gg[s1], gq[s1]):
            for y in itertools.chain(gg[s2], gq[s2]):
                if not (_mentions_var(x) or _mentions_var(y)):
                    continue
                for f in (canonical_and(x, y), canonical_or(x, y)):
                    _add_formula(gg, s, f, _mentions_var)

    # bodies: bare value constraints, or guard => value constraint
    for f in of[s]:
        body.add(s, f)
    for s1, s2 in _splits(s - 1):
        for g in gg[s1]:
            for v in itertools.chain(of[s2], gq[s2]):
                f = canonical_implies(g, v)
                if _mentions_var(f):
                    body.add(s, f)
