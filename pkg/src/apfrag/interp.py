"""Interpolation problems, the array example, and refutation of candidate interpolants.

The example problem is

    A:  forall i. a[i] < b[k]
    B:  forall j. not (a[l] < b[j])

with ``a`` and ``b`` shared, ``k`` local to A and ``l`` local to B. A
candidate interpolant is refuted by finding a member of the separating
model family on which it has the wrong truth value. Every even member
satisfies A, so an interpolant must hold there. Every odd member satisfies
B, so an interpolant must fail there.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import syntax as sx
from .errors import NoClashError, ParityViolationError
from .evaluate import decide_property, eval_formula, eval_term, instantiation_points
from .fragment import Reason, is_in_fragment
from .models import paper_model
from .smtlib import format_formula

__all__ = [
    "InterpolationProblem", "example_problem", "Outcome", "CandidateVerdict",
    "verify_example_unsat", "check_candidate", "alternating_interpolants",
    "eval_nested", "check_alternating_interpolants",
]

A_ARR = sx.array_const("a")
B_ARR = sx.array_const("b")
K = sx.int_const("k")
L = sx.int_const("l")


@dataclass(frozen=True)
class InterpolationProblem:
    a: sx.Formula
    b: sx.Formula
    partition: sx.SymbolPartition

    @classmethod
    def of(cls, a: sx.Formula, b: sx.Formula) -> "InterpolationProblem":
        return cls(a, b, sx.SymbolPartition.of(a, b))


@lru_cache(maxsize=None)
def example_problem() -> InterpolationProblem:
    a, b, k, l = (sx.Const(s) for s in (A_ARR, B_ARR, K, L))
    i, j = sx.Var("i"), sx.Var("j")
    fa = sx.forall(i, sx.lt(sx.select(a, i), sx.select(b, k)))
    fb = sx.forall(j, sx.Not(sx.lt(sx.select(a, l), sx.select(b, j))))
    return InterpolationProblem.of(fa, fb)


# -- unsatisfiability witness -------------------------------------------------

def _index_terms(f):
    out = []
    for t in sx.subterms(f):
        if isinstance(t, sx.App) and t.symbol == sx.SELECT and sx.is_ground(t.args[1]):
            out.append(t.args[1])
    return list(dict.fromkeys(out))


def _literals(f):
    if isinstance(f, sx.And):
        for g in f.args:
            yield from _literals(g)
    else:
        yield f


def _normalize(lit):
    """``(positive, atom)`` with the arguments of ``=`` in a fixed order."""
    positive = True
    while isinstance(lit, sx.Not):
        positive = not positive
        lit = lit.arg
    if not isinstance(lit, sx.Atom):
        return positive, lit
    t = lit.term
    if isinstance(t, sx.App) and t.symbol in (sx.EQ, sx.EQ_ARRAY):
        t = sx.App(t.symbol, tuple(sorted(t.args, key=str)))
    return positive, sx.Atom(t)


def verify_example_unsat(problem: InterpolationProblem | None = None):
    """A pair of complementary ground literals proving ``A and B`` unsat.

    A's block is instantiated with the ground index terms that B can see
    (B-local or shared), B's block with those A can see. The first pair of
    instances that contradict each other is returned as ``(lit, not lit)``.
    """
    p = problem or example_problem()
    part = p.partition
    if not (isinstance(p.a, sx.Forall) and isinstance(p.b, sx.Forall)
            and len(p.a.vars) == 1 and len(p.b.vars) == 1):
        raise NoClashError("both sides must be single-variable quantifier blocks")
    pool = _index_terms(p.a) + [t for t in _index_terms(p.b) if t not in _index_terms(p.a)]

    def visible(t, local):
        return all(s in local or part.is_shared(s) for s in sx.free_symbols(t))

    a_insts = [sx.substitute(p.a.body, p.a.vars[0], t) for t in pool if visible(t, part.b_local)]
    b_insts = [sx.substitute(p.b.body, p.b.vars[0], t) for t in pool if visible(t, part.a_local)]
    for fa in a_insts:
        for la in _literals(fa):
            pa, atom_a = _normalize(la)
            for fb in b_insts:
                for lb in _literals(fb):
                    pb, atom_b = _normalize(lb)
                    if atom_a == atom_b and pa != pb:
                        return (la, lb) if pa else (lb, la)
    raise NoClashError("no complementary instances found")


# -- candidates ---------------------------------------------------------------

class Outcome(str, enum.Enum):
    NOT_SHARED = "not-shared"
    NOT_IN_FRAGMENT = "not-in-fragment"
    FAILS_CONDITION_I = "fails-condition-i"
    FAILS_CONDITION_II = "fails-condition-ii"
    SURVIVES_HORIZON = "survives-horizon"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CandidateVerdict:
    candidate: sx.Formula
    outcome: Outcome
    witness: int | None = None

    @property
    def parity(self):
        if self.witness is None:
            return None
        return "even" if self.witness % 2 == 0 else "odd"

    @property
    def refuted(self) -> bool:
        return self.outcome in (Outcome.FAILS_CONDITION_I, Outcome.FAILS_CONDITION_II)

    def to_json(self) -> dict:
        condition = {Outcome.FAILS_CONDITION_I: "i", Outcome.FAILS_CONDITION_II: "ii"}.get(self.outcome)
        return {
            "candidate": format_formula(self.candidate),
            "outcome": self.outcome.value,
            "witness": self.witness,
            "parity": self.parity,
            "condition": condition,
        }


def check_candidate(problem: InterpolationProblem, c: sx.Formula, horizon: int = 64) -> CandidateVerdict:
    """Sweep the model family up to ``horizon`` for a parity violation.

    Only meaningful for the example problem; the model family is built for it.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if problem != example_problem():
        raise ValueError("candidate refutation is only defined for the example problem")
    if not all(problem.partition.is_shared(s) for s in sx.free_symbols(c)):
        return CandidateVerdict(c, Outcome.NOT_SHARED)
    if not is_in_fragment(c):
        return CandidateVerdict(c, Outcome.NOT_IN_FRAGMENT)
    for i in range(horizon + 1):
        holds = eval_formula(paper_model(i), c, check=False)
        if i % 2 == 0 and not holds:
            return CandidateVerdict(c, Outcome.FAILS_CONDITION_I, i)
        if i % 2 == 1 and holds:
            return CandidateVerdict(c, Outcome.FAILS_CONDITION_II, i)
    return CandidateVerdict(c, Outcome.SURVIVES_HORIZON)


# -- the two alternating interpolants ----------------------------------------

def alternating_interpolants():
    """``(I1, I2)``: exists j. forall i. a[i] < b[j], and forall i. exists j. a[i] < b[j]."""
    a, b = sx.Const(A_ARR), sx.Const(B_ARR)
    i, j = sx.Var("i"), sx.Var("j")
    body = sx.lt(sx.select(a, i), sx.select(b, j))
    i1 = sx.Not(sx.forall(j, sx.Not(sx.forall(i, body))))
    i2 = sx.forall(i, sx.Not(sx.forall(j, sx.Not(body))))
    return i1, i2


def _outer_points(model, block):
    names = {v.name for v in block.vars}
    arrays = []
    for t in sx.subterms(block.body):
        if isinstance(t, sx.Var) and t.name in names:
            continue
        if isinstance(t, sx.App) and any(isinstance(a, sx.Var) and a.name in names for a in t.args):
            if t.symbol != sx.SELECT or isinstance(t.args[0], sx.Var) or not sx.is_ground(t.args[0]):
                raise ValueError(f"outer variable used outside a ground-array read: {t}")
            arrays.append(eval_term(model, t.args[0]))
    return instantiation_points(arrays, (), len(block.vars))


def eval_nested(model, f):
    """``(value, counterexample)`` for formulas with nested blocks.

    Outer block variables may only index reads of ground arrays; they are
    instantiated over the read profiles and the inner formula is decided
    recursively. ``counterexample`` belongs to the outermost block reached
    through negations only, when that block is false.
    """
    if isinstance(f, sx.Not):
        value, cex = eval_nested(model, f.arg)
        return not value, cex
    if isinstance(f, sx.Forall):
        if not any(isinstance(g, sx.Forall) for g in _formulas(f.body)):
            return decide_property(model, f)
        points = _outer_points(model, f)
        for values in itertools.product(points, repeat=len(f.vars)):
            inner = f.body
            for v, x in zip(f.vars, values):
                inner = sx.substitute(inner, v, sx.IntLit(x))
            if not eval_nested(model, inner)[0]:
                return False, {v.name: x for v, x in zip(f.vars, values)}
        return True, None
    if isinstance(f, (sx.And, sx.Or, sx.Implies)):
        vals = [eval_nested(model, g)[0] for g in sx.children(f)]
        if isinstance(f, sx.And):
            return all(vals), None
        if isinstance(f, sx.Or):
            return any(vals), None
        return (not vals[0]) or vals[1], None
    return eval_formula(model, f), None


def _formulas(f):
    yield f
    for g in sx.children(f):
        if isinstance(g, sx.Formula):
            yield from _formulas(g)


def check_alternating_interpolants(horizon: int = 100) -> dict:
    """Check that both alternating interpolants separate the model family
    and that the recognizer rejects both for alternation."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    report = {}
    for name, f in zip(("I1", "I2"), alternating_interpolants()):
        verdict = is_in_fragment(f)
        if verdict.member or verdict.reason is not Reason.QUANTIFIER_ALTERNATION:
            raise ParityViolationError(f"{name} was not rejected for alternation: {verdict}")
        for i in range(horizon + 1):
            value, _ = eval_nested(paper_model(i), f)
            if value != (i % 2 == 0):
                raise ParityViolationError(f"{name} evaluates to {value} on model {i}")
        report[name] = {"formula": format_formula(f), "verdict": str(verdict),
                        "models": horizon + 1, "separates": True}
    return report
