"""Syntactic recognition of the alternation-free array property fragment.

An array property is ``forall js. guard => value`` where

* ``guard`` is a positive and/or combination of ground literals and
  literals ``j <= t``, ``t <= j``, ``j <= j'``, ``j = t``, ``j = j'``
  (``t`` ground), and
* ``value`` mentions the bound variables only as the index of a select
  whose array argument is ground, and such a select never sits inside the
  arguments of another select, a store or a diff.

A fragment formula is any Boolean combination of array properties and
quantifier-free formulas. No quantifier may occur inside another one.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import syntax as sx

__all__ = [
    "Reason", "FragmentVerdict", "is_index_guard", "is_value_constraint",
    "is_in_fragment", "split_property", "rewrite_strict_guards",
]


class Reason(str, enum.Enum):
    NEGATED_GUARD_LITERAL = "negated-guard-literal"
    ILLEGAL_GUARD_LITERAL_SHAPE = "illegal-guard-literal-shape"
    NESTED_SELECT_ON_QUANTIFIED_VAR = "nested-select-on-quantified-var"
    QUANTIFIED_VAR_IN_STORE_OR_DIFF = "quantified-var-in-store-or-diff"
    QUANTIFIED_VAR_OUTSIDE_SELECT = "quantified-var-outside-select"
    QUANTIFIER_ALTERNATION = "quantifier-alternation"
    # Kept for interface completeness; the AST cannot place a quantifier
    # inside a term, so the recognizer never produces it.
    QUANTIFIER_UNDER_UNINTERPRETED_CONTEXT = "quantifier-under-uninterpreted-context"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FragmentVerdict:
    member: bool
    reason: "Reason | None" = None
    location: tuple = ()

    def __bool__(self):
        return self.member

    def __str__(self):
        if self.member:
            return "member"
        where = ".".join(map(str, self.location)) or "root"
        return f"rejected: {self.reason} at {where}"


MEMBER = FragmentVerdict(True)


def _reject(reason, path):
    return FragmentVerdict(False, reason, tuple(path))


def _mentions(node, names) -> bool:
    return any(isinstance(t, sx.Var) and t.name in names for t in sx.subterms(node))


def _has_quantifier(f) -> "tuple | None":
    """Path to the first quantifier inside ``f``, or None."""
    if isinstance(f, sx.Forall):
        return ()
    if isinstance(f, sx.Not):
        sub = _has_quantifier(f.arg)
        return None if sub is None else (0,) + sub
    if isinstance(f, (sx.And, sx.Or)):
        for k, g in enumerate(f.args):
            sub = _has_quantifier(g)
            if sub is not None:
                return (k,) + sub
    if isinstance(f, sx.Implies):
        for k, g in enumerate((f.lhs, f.rhs)):
            sub = _has_quantifier(g)
            if sub is not None:
                return (k,) + sub
    return None


# -- index guards -------------------------------------------------------------

def _guard_literal_ok(term, names, allow_strict):
    lhs, rhs = term.args
    lvar = isinstance(lhs, sx.Var) and lhs.name in names
    rvar = isinstance(rhs, sx.Var) and rhs.name in names
    if term.symbol in (sx.LE, sx.EQ):
        if lvar and rvar:
            return True
        if lvar:
            return not _mentions(rhs, names)
        if rvar:
            return not _mentions(lhs, names)
        return False
    if term.symbol == sx.LT:
        # only var-vs-ground, which the optional rewrite turns into <=
        if allow_strict and lvar != rvar:
            other = rhs if lvar else lhs
            return not _mentions(other, names)
    return False


def _guard(f, names, path, allow_strict):
    if not _mentions(f, names) and _has_quantifier(f) is None:
        return MEMBER
    if isinstance(f, sx.Forall):
        return _reject(Reason.QUANTIFIER_ALTERNATION, path)
    if isinstance(f, sx.Atom):
        if isinstance(f.term, sx.App) and _guard_literal_ok(f.term, names, allow_strict):
            return MEMBER
        return _reject(Reason.ILLEGAL_GUARD_LITERAL_SHAPE, path)
    if isinstance(f, sx.Not):
        inner = _has_quantifier(f.arg)
        if inner is not None:
            return _reject(Reason.QUANTIFIER_ALTERNATION, path + [0] + list(inner))
        return _reject(Reason.NEGATED_GUARD_LITERAL, path)
    if isinstance(f, (sx.And, sx.Or)):
        for k, g in enumerate(f.args):
            v = _guard(g, names, path + [k], allow_strict)
            if not v:
                return v
        return MEMBER
    if isinstance(f, sx.Implies):
        # lhs => rhs is (not lhs) or rhs: the antecedent sits under a negation
        if _mentions(f.lhs, names):
            return _reject(Reason.NEGATED_GUARD_LITERAL, path + [0])
        return _guard(f.rhs, names, path + [1], allow_strict)
    raise TypeError(f"not a formula: {f!r}")


def is_index_guard(g: sx.Formula, variables, *, allow_strict=False) -> FragmentVerdict:
    """Check that ``g`` is a legal index guard for the bound ``variables``."""
    names = {v.name if isinstance(v, sx.Var) else v for v in variables}
    return _guard(g, names, [], allow_strict)


# -- value constraints --------------------------------------------------------

def _vc_term(t, names, path, ancestors):
    """``ancestors``: the array operators whose arguments enclose ``t``."""
    if isinstance(t, sx.Var):
        if t.name not in names:
            return MEMBER
        if "store" in ancestors or "diff" in ancestors:
            return _reject(Reason.QUANTIFIED_VAR_IN_STORE_OR_DIFF, path)
        return _reject(Reason.QUANTIFIED_VAR_OUTSIDE_SELECT, path)
    if not isinstance(t, sx.App):
        return MEMBER
    sym = t.symbol
    if sym == sx.SELECT:
        arr, idx = t.args
        if isinstance(idx, sx.Var) and idx.name in names:
            if "store" in ancestors or "diff" in ancestors:
                return _reject(Reason.QUANTIFIED_VAR_IN_STORE_OR_DIFF, path)
            if "select" in ancestors:
                return _reject(Reason.NESTED_SELECT_ON_QUANTIFIED_VAR, path)
            return _vc_term(arr, names, path + [0], ancestors | {"select"})
        inner = ancestors | {"select"}
        for k, a in enumerate(t.args):
            v = _vc_term(a, names, path + [k], inner)
            if not v:
                return v
        return MEMBER
    if sym == sx.STORE:
        inner = ancestors | {"store"}
    elif sym == sx.DIFF:
        inner = ancestors | {"diff"}
    else:
        inner = ancestors
    for k, a in enumerate(t.args):
        v = _vc_term(a, names, path + [k], inner)
        if not v:
            return v
    return MEMBER


def _vc(f, names, path):
    if isinstance(f, sx.Forall):
        return _reject(Reason.QUANTIFIER_ALTERNATION, path)
    if isinstance(f, sx.Atom):
        return _vc_term(f.term, names, path + [0], frozenset())
    for k, g in enumerate(sx.children(f)):
        v = _vc(g, names, path + [k])
        if not v:
            return v
    return MEMBER


def is_value_constraint(v: sx.Formula, variables) -> FragmentVerdict:
    names = {x.name if isinstance(x, sx.Var) else x for x in variables}
    return _vc(v, names, [])


# -- whole formulas -----------------------------------------------------------

def _property(f: sx.Forall, path, allow_strict):
    names = {v.name for v in f.vars}
    nested = _has_quantifier(f.body)
    if nested is not None:
        return _reject(Reason.QUANTIFIER_ALTERNATION, path + [0] + list(nested))
    body = f.body
    if isinstance(body, sx.Implies):
        gv = is_index_guard(body.lhs, names, allow_strict=allow_strict)
        vv = _vc(body.rhs, names, path + [0, 1])
        if gv and vv:
            return MEMBER
        whole = _vc(body, names, path + [0])
        if whole:
            return whole
        if not gv:
            return FragmentVerdict(False, gv.reason, tuple(path + [0, 0]) + gv.location)
        return vv
    return _vc(body, names, path + [0])


def _fragment(f, path, allow_strict):
    if isinstance(f, sx.Forall):
        return _property(f, path, allow_strict)
    if isinstance(f, sx.Atom):
        for t in sx.subterms(f.term):
            if isinstance(t, sx.Var):
                return _reject(Reason.QUANTIFIED_VAR_OUTSIDE_SELECT, path)
        return MEMBER
    for k, g in enumerate(sx.children(f)):
        v = _fragment(g, path + [k], allow_strict)
        if not v:
            return v
    return MEMBER


def is_in_fragment(f: sx.Formula, *, rewrite_strict=False) -> FragmentVerdict:
    """Membership in the alternation-free array property fragment.

    With ``rewrite_strict`` the guard literals ``j < t`` and ``t < j`` are
    accepted, as :func:`rewrite_strict_guards` turns them into ``<=`` form.
    """
    return _fragment(f, [], rewrite_strict)


def split_property(f: sx.Forall):
    """Return ``(guard, value_constraint)``; an unguarded body gets guard true."""
    names = {v.name for v in f.vars}
    body = f.body
    if isinstance(body, sx.Implies):
        if is_index_guard(body.lhs, names, allow_strict=True) and is_value_constraint(body.rhs, names):
            return body.lhs, body.rhs
    return sx.TRUE, body


def rewrite_strict_guards(f: sx.Formula) -> sx.Formula:
    """Rewrite ``j < t`` to ``j <= t - 1`` and ``t < j`` to ``t + 1 <= j`` in guards."""
    if isinstance(f, sx.Forall):
        body = f.body
        if isinstance(body, sx.Implies):
            names = {v.name for v in f.vars}
            body = sx.Implies(_rewrite_guard(body.lhs, names), body.rhs)
        return sx.Forall(f.vars, body)
    if isinstance(f, sx.Not):
        return sx.Not(rewrite_strict_guards(f.arg))
    if isinstance(f, sx.And):
        return sx.And(tuple(rewrite_strict_guards(g) for g in f.args))
    if isinstance(f, sx.Or):
        return sx.Or(tuple(rewrite_strict_guards(g) for g in f.args))
    if isinstance(f, sx.Implies):
        return sx.Implies(rewrite_strict_guards(f.lhs), rewrite_strict_guards(f.rhs))
    return f


def _rewrite_guard(g, names):
    if isinstance(g, sx.Atom) and isinstance(g.term, sx.App) and g.term.symbol == sx.LT:
        lhs, rhs = g.term.args
        lvar = isinstance(lhs, sx.Var) and lhs.name in names
        rvar = isinstance(rhs, sx.Var) and rhs.name in names
        if lvar and not _mentions(rhs, names):
            return sx.le(lhs, sx.minus(rhs, 1))
        if rvar and not _mentions(lhs, names):
            return sx.le(sx.plus(lhs, 1), rhs)
        return g
    if isinstance(g, sx.And):
        return sx.And(tuple(_rewrite_guard(h, names) for h in g.args))
    if isinstance(g, sx.Or):
        return sx.Or(tuple(_rewrite_guard(h, names) for h in g.args))
    if isinstance(g, sx.Implies):
        return sx.Implies(g.lhs, _rewrite_guard(g.rhs, names))
    return g
