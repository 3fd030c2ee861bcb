import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from apfrag import syntax as sx
from apfrag.errors import NotInFragmentError
from apfrag.evaluate import eval_formula, eval_term
from apfrag.models import paper_model
from apfrag.stabilize import (NotSharedError, Property, stab_index_formula, stab_index_property,
                              stab_index_term, verify_stabilization)
from generators import A, B, K, FormulaGen

J = sx.Var("j")


def test_select_constant_index():
    r = stab_index_term(sx.select(B, 3))
    assert (r.index, r.property, r.value, r.conditional) == (3, Property.SCALAR, 2, False)
    assert verify_stabilization(r, 50)
    assert not verify_stabilization(replace(r, index=0), 50)


def test_diff_of_shared_arrays():
    r = stab_index_term(sx.diff(A, B))
    assert (r.index, r.property, r.value) == (0, Property.SCALAR, -1)
    assert verify_stabilization(r, 50)


def test_array_symbol():
    r = stab_index_term(A)
    assert (r.index, r.property) == (0, Property.ARRAY)
    assert verify_stabilization(r, 50)
    assert verify_stabilization(stab_index_term(B), 50)


def test_store_rule():
    t = sx.store(A, 5, 7)
    r = stab_index_term(t)
    assert r.index == 6 and r.property is Property.ARRAY
    assert verify_stabilization(r, 50)


def test_diff_of_equal_arrays_is_conditional():
    r = stab_index_term(sx.diff(A, A))
    assert r.conditional and r.value == 0


def test_property_examples():
    pos = sx.forall(J, sx.implies(sx.TRUE, sx.le(0, sx.select(B, J))))
    r = stab_index_property(pos)
    assert r.value is True and r.conditional
    small = sx.forall(J, sx.implies(sx.TRUE, sx.le(sx.select(B, J), 1)))
    r = stab_index_property(small)
    assert (r.index, r.value) == (2, False)
    assert [eval_formula(paper_model(i), small) for i in range(4)] == [True, True, False, False]
    below = sx.forall(J, sx.implies(sx.TRUE, sx.lt(sx.select(A, J), sx.select(B, J))))
    r = stab_index_property(below)
    assert verify_stabilization(r, 50)
    assert all(eval_formula(paper_model(i), below) == r.value for i in range(r.index, 120))


def test_guard_values_push_index():
    phi = sx.forall(J, sx.implies(sx.le(J, 9), sx.le(sx.select(A, J), 100)))
    r = stab_index_property(phi)
    assert r.index >= 10 and r.value is True


def test_non_shared_rejected():
    with pytest.raises(NotSharedError):
        stab_index_term(sx.select(A, K))
    with pytest.raises(NotInFragmentError):
        stab_index_property(sx.forall(J, sx.eq(sx.select(A, J), J)))


def test_formula_report():
    f = sx.And((sx.eq(sx.select(B, 3), 2), sx.lt(sx.diff(A, B), 0)))
    r = stab_index_formula(f)
    assert r.index == 3 and r.value is True
    assert verify_stabilization(r, 50)


def test_report_json():
    obj = stab_index_term(sx.select(B, 3)).to_json()
    assert obj == {"subject": "(select b 3)", "index": 3, "property": "P1-scalar",
                   "verifiedHorizon": 64, "conditional": False, "value": 2}


def _shared_gen(seed):
    return FormulaGen(random.Random(seed), shared_only=True, literals=(0, 8))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_generated_terms_stabilize(seed):
    gen = _shared_gen(seed)
    t = gen.int_term(3) if seed % 3 else gen.array_term(3)
    r = stab_index_term(t)
    assert verify_stabilization(r, 50)
    # monotone: the same claim holds from one model later
    assert verify_stabilization(replace(r, index=r.index + 1), 10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_generated_properties_stabilize(seed):
    phi = _shared_gen(seed).block(depth=1)
    r = stab_index_property(phi)
    assert verify_stabilization(r, 50)
    values = {eval_formula(paper_model(i), phi) for i in range(r.index, r.index + 30)}
    assert values == {r.value}


def test_scalar_value_matches_models():
    t = sx.plus(sx.select(A, 7), sx.select(B, sx.diff(A, B)))
    r = stab_index_term(t)
    assert all(eval_term(paper_model(i), t) == r.value for i in range(r.index, 100))
