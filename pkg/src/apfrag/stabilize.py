"""Stabilization indices for shared terms and formulas over the model family.

For a shared scalar term the index is where its value freezes (``P1``).
For a shared array term it is where two things start to hold: the prefix
up to the model index stops changing, and everything beyond the model
index repeats the element stored there (``P2``). For a formula it is where
its truth value freezes (``F``). Indices are combined by induction on the
term: maxima over subterms, plus the extra terms for select and store. Every report is re-checked on the models it claims.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import syntax as sx
from .errors import ApfError, NotInFragmentError, VerificationError
from .evaluate import compile_property, eval_formula, eval_term
from .fragment import is_in_fragment, split_property
from .models import paper_model
from .smtlib import format_formula, format_term

__all__ = [
    "Property", "StabilizationReport", "NotSharedError", "stab_index_term",
    "stab_index_property", "stab_index_formula", "verify_stabilization",
    "DEFAULT_HORIZON", "DEFAULT_EXTRA", "SHARED_ARRAYS",
]

DEFAULT_HORIZON = 64
DEFAULT_EXTRA = 50
SHARED_ARRAYS = frozenset({"a", "b"})


class Property(str, enum.Enum):
    SCALAR = "P1-scalar"
    ARRAY = "P2-array"
    CONSTANT_VALUE = "F-constant-value"

    def __str__(self):
        return self.value


class NotSharedError(ApfError):
    pass


@dataclass(frozen=True)
class StabilizationReport:
    subject: object
    index: int
    property: Property
    verified_horizon: int
    conditional: bool = False
    value: object = None

    def to_json(self) -> dict:
        subject = (format_term(self.subject) if isinstance(self.subject, sx.Term)
                   else format_formula(self.subject))
        return {
            "subject": subject,
            "index": self.index,
            "property": self.property.value,
            "verifiedHorizon": self.verified_horizon,
            "conditional": self.conditional,
            "value": self.value,
        }


def _require_shared(node):
    for sym in sx.free_symbols(node):
        if sym.name not in SHARED_ARRAYS or sym.result != sx.ARRAY:
            raise NotSharedError(f"symbol {sym.name} is not shared")


def _term_index(t, horizon, memo):
    """``(index, conditional)`` for ground term ``t``, following the induction."""
    hit = memo.get(t)
    if hit is not None:
        return hit
    if isinstance(t, (sx.IntLit, sx.BoolLit, sx.Const)):
        out = (0, False)
    elif isinstance(t, sx.App):
        parts = [_term_index(a, horizon, memo) for a in t.args]
        cond = any(c for _, c in parts)
        sym = t.symbol
        if sym == sx.SELECT:
            (i_arr, _), (i_idx, _) = parts
            pos = eval_term(paper_model(i_idx), t.args[1])
            out = (max(i_idx, i_arr, pos, 0), cond)
        elif sym == sx.STORE:
            (i_arr, _), (i_pos, _), (i_val, _) = parts
            pos = eval_term(paper_model(i_pos), t.args[1])
            out = (max(i_pos, i_val, i_arr, pos + 1, 0), cond)
        elif sym in (sx.DIFF, sx.EQ_ARRAY):
            # first model from the joint index on where the arrays differ; the
            # difference then lies at or below that index and never moves
            start = max(i for i, _ in parts)
            for i in range(start, horizon + 1):
                m = paper_model(i)
                if eval_term(m, t.args[0]) != eval_term(m, t.args[1]):
                    out = (i, cond)
                    break
            else:
                out = (start, True)
        else:
            out = (max(i for i, _ in parts), cond)
    else:
        raise ValueError(f"not a ground term: {t!r}")
    memo[t] = out
    return out


def stab_index_term(t: sx.Term, horizon: int = DEFAULT_HORIZON) -> StabilizationReport:
    """Report for a shared ground term, checked on ``[index, horizon]``."""
    if not sx.is_ground(t):
        raise ValueError("term must be ground")
    _require_shared(t)
    index, cond = _term_index(t, horizon, {})
    prop = Property.ARRAY if t.sort == sx.ARRAY else Property.SCALAR
    value = None if prop is Property.ARRAY else eval_term(paper_model(index), t)
    report = StabilizationReport(t, index, prop, max(horizon, index), cond, value)
    if not verify_stabilization(report, 0):
        raise VerificationError(f"stabilization claim for {t} failed its own check")
    return report


def _maximal_ground_terms(f, names):
    out = []

    def visit(node):
        if isinstance(node, sx.Term):
            if not any(isinstance(u, sx.Var) and u.name in names for u in sx.subterms(node)):
                out.append(node)
                return
        for c in sx.children(node):
            visit(c)

    visit(f)
    return out


def stab_index_property(phi: sx.Forall, horizon: int = DEFAULT_HORIZON) -> StabilizationReport:
    """Report for a shared array property.

    The base index is the largest index of the ground subterms; it is pushed
    past every ground guard value. From there the first model falsifying
    ``phi`` starts a run of falsity that never ends. If no such model shows
    up before ``horizon`` the report claims truth and is marked conditional.
    """
    if not isinstance(phi, sx.Forall):
        raise TypeError("expected a quantifier block")
    verdict = is_in_fragment(phi, rewrite_strict=True)
    if not verdict:
        raise NotInFragmentError(verdict)
    _require_shared(phi)
    names = {v.name for v in phi.vars}
    memo = {}
    i0, cond = 0, False
    for t in _maximal_ground_terms(phi.body, names):
        i, c = _term_index(t, horizon, memo)
        i0, cond = max(i0, i), cond or c
    i1 = i0
    m0 = paper_model(i0)
    for t in compile_property(phi).guard_terms:
        i1 = max(i1, eval_term(m0, t) + 1)
    for i2 in range(i1, horizon + 1):
        if not eval_formula(paper_model(i2), phi, check=False):
            report = StabilizationReport(phi, i2, Property.CONSTANT_VALUE, max(horizon, i2), cond, False)
            break
    else:
        report = StabilizationReport(phi, i1, Property.CONSTANT_VALUE, max(horizon, i1), True, True)
    if not verify_stabilization(report, 0):
        raise VerificationError(f"stabilization claim for {phi} failed its own check")
    return report


def _formula_index(f, horizon, memo):
    if isinstance(f, sx.Forall):
        r = stab_index_property(f, horizon)
        return r.index, r.conditional
    if isinstance(f, sx.Atom):
        return _term_index(f.term, horizon, memo)
    parts = [_formula_index(g, horizon, memo) for g in sx.children(f)]
    return max(i for i, _ in parts), any(c for _, c in parts)


def stab_index_formula(f: sx.Formula, horizon: int = DEFAULT_HORIZON) -> StabilizationReport:
    """Report for any shared fragment formula: the maximum over its parts."""
    if isinstance(f, sx.Forall):
        return stab_index_property(f, horizon)
    verdict = is_in_fragment(f, rewrite_strict=True)
    if not verdict:
        raise NotInFragmentError(verdict)
    _require_shared(f)
    index, cond = _formula_index(f, horizon, {})
    value = eval_formula(paper_model(index), f, check=False)
    report = StabilizationReport(f, index, Property.CONSTANT_VALUE, max(horizon, index), cond, value)
    if not verify_stabilization(report, 0):
        raise VerificationError(f"stabilization claim for {f} failed its own check")
    return report


def _same_prefix(s, t, upto):
    if s.left_tail != t.left_tail:
        return False
    return all(s.read(j) == t.read(j) for j in range(min(s.lo, t.lo), upto + 1))


def _repeats_after(s, i, probe):
    v = s.read(i)
    if any(s.read(j) != v for j in range(i + 1, i + probe + 1)):
        return False
    return s.right_tail == v and all(x == v for j, x in zip(s.indices(), s.window) if j > i)


def verify_stabilization(r: StabilizationReport, extra: int = DEFAULT_EXTRA, probe: int = 8) -> bool:
    """Re-check the report's property on every model in
    ``[index, verified_horizon + extra]``."""
    last = r.verified_horizon + extra
    models = range(r.index, last + 1)
    if r.property is Property.SCALAR:
        base = eval_term(paper_model(r.index), r.subject)
        if r.value is not None and base != r.value:
            return False
        return all(eval_term(paper_model(i), r.subject) == base for i in models)
    if r.property is Property.CONSTANT_VALUE:
        base = eval_formula(paper_model(r.index), r.subject, check=False)
        if r.value is not None and base != r.value:
            return False
        return all(eval_formula(paper_model(i), r.subject, check=False) == base for i in models)
    prev = None
    for i in models:
        arr = eval_term(paper_model(i), r.subject)
        if not _repeats_after(arr, i, probe):
            return False
        # prefix agreement between consecutive models chains to all later ones
        if prev is not None and not _same_prefix(prev, arr, i - 1):
            return False
        prev = arr
    return True
