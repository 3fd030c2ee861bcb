import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from apfrag.errors import UnassignedSymbolError
from apfrag.models import (DiffCase, FinArray, Model, diff_case, diff_index, dumps_model,
                           loads_model, model_from_json, model_to_json, paper_model)
from generators import fin_array

ZERO = FinArray.constant(0)


def arrays(span=12):
    return st.builds(
        FinArray, st.integers(-3, 3), st.integers(-span, span),
        st.lists(st.integers(-3, 3), max_size=6).map(tuple), st.integers(-3, 3))


def cover(*arrs):
    lo = min(min(s.lo for s in arrs), 0) - 2
    hi = max(max(s.hi for s in arrs), 0) + 2
    return range(lo, hi + 1)


def scan_diff(s, t):
    """Reference diff by scanning a covering interval."""
    span = cover(s, t)
    differ = [j for j in span if s[j] != t[j]]
    if not differ:
        return 0
    neg = [j for j in differ if j < 0]
    return max(neg) if neg else min(differ)


def test_reads():
    m4 = paper_model(4)
    assert m4.array_value("a")[3] == 2
    assert m4.array_value("b")[-7] == 1
    assert all(ZERO[j] == 0 for j in range(-50, 50))


def test_store_examples():
    assert ZERO.store(5, 0) == ZERO
    assert ZERO.store(5, 0).is_canonical()
    a = paper_model(4).array_value("a")
    s = a.store(-2, 9)
    assert s[-2] == 9 and s.lo <= -2
    assert all(s[j] == a[j] for j in range(-10, 11) if j != -2)


@settings(max_examples=300, deadline=None)
@given(arrays(), st.integers(-20, 20), st.integers(-5, 5))
def test_read_over_write(s, j, v):
    t = s.store(j, v)
    assert t[j] == v
    assert t.is_canonical()
    assert all(t[x] == s[x] for x in cover(s, t) if x != j)


def test_diff_examples():
    assert diff_index(ZERO, FinArray.constant(0)) == 0
    assert diff_index(ZERO, ZERO.store(5, 1)) == 5
    s = ZERO.store(-3, 1).store(2, 1)
    assert diff_index(ZERO, s) == -3
    assert diff_case(ZERO, s) == (DiffCase.NEGATIVE, -3)
    assert diff_case(ZERO, ZERO.store(5, 1)) == (DiffCase.NONNEGATIVE, 5)
    # differing left tails put the difference below every window
    assert diff_index(FinArray(1, 5, (0,), 0), FinArray(0, 0, (), 0)) == -1
    assert diff_index(FinArray(1, -5, (0,), 0), FinArray(0, -5, (0,), 0)) == -6
    # equal left tails, differing right tails past both windows
    assert diff_index(FinArray(0, 2, (4,), 1), FinArray(0, 2, (4,), 0)) == 3


@settings(max_examples=500, deadline=None)
@given(arrays(), arrays())
def test_diff_matches_scan(s, t):
    assert diff_index(s, t) == scan_diff(s, t)
    if s != t:
        j = diff_index(s, t)
        assert s[j] != t[j]


@settings(max_examples=300, deadline=None)
@given(arrays(), arrays())
def test_canonical_equality_is_extensional(s, t):
    pointwise = all(s[j] == t[j] for j in cover(s, t))
    assert (s == t) == pointwise
    assert s.canonical() == s
    assert s.canonical().is_canonical()
    if s == t:
        assert hash(s) == hash(t)


def test_canonical_shapes():
    assert FinArray(2, 7, (2, 2), 2).canonical() == FinArray.constant(2)
    assert FinArray(2, 7, (2, 2), 2).canonical().window == ()
    step = FinArray(0, 3, (), 1).canonical()
    assert (step.lo, step.window) == (3, (1,))
    assert FinArray(0, 1, (0, 5, 1), 1).canonical().window == (5,)


def test_paper_models():
    m0 = paper_model(0)
    assert m0.array_value("a") == FinArray.constant(0)
    assert m0.array_value("b") == FinArray.constant(1)
    assert (m0.int_value("k"), m0.int_value("l")) == (0, 0)
    m4 = paper_model(4)
    a, b = m4.array_value("a"), m4.array_value("b")
    assert (a.left_tail, a.lo, a.window, a.right_tail) == (0, 1, (1, 1, 2, 2), 2)
    assert (b.left_tail, b.lo, b.window, b.right_tail) == (1, 1, (1, 2, 2, 3), 3)
    m3 = paper_model(3)
    a, b = m3.array_value("a"), m3.array_value("b")
    assert (a.left_tail, a.lo, a.window, a.right_tail) == (0, 1, (1, 1, 2), 2)
    assert (b.left_tail, b.lo, b.window, b.right_tail) == (1, 1, (1, 2, 2), 2)
    with pytest.raises(ValueError):
        paper_model(-1)


@pytest.mark.parametrize("i", range(0, 40))
def test_paper_model_case_formulas(i):
    m = paper_model(i)
    a, b = m.array_value("a"), m.array_value("b")
    for j in range(-5, i + 6):
        ja = 0 if j <= 0 else (-(-j // 2) if j <= i else -(-i // 2))
        jb = 1 if j <= 0 else (j // 2 + 1 if j <= i else i // 2 + 1)
        assert (a[j], b[j]) == (ja, jb)


@pytest.mark.parametrize("i", range(0, 60))
def test_maximum_value_property(i):
    m = paper_model(i)
    a, b = m.array_value("a"), m.array_value("b")
    span = cover(a, b)
    top_a = max(max(a[j] for j in span), a.left_tail, a.right_tail)
    top_b = max(max(b[j] for j in span), b.left_tail, b.right_tail)
    assert (b[i] > top_a) == (i % 2 == 0)
    assert (a[i] >= top_b) == (i % 2 == 1)


def test_diff_of_paper_arrays():
    for i in range(30):
        m = paper_model(i)
        assert diff_index(m.array_value("a"), m.array_value("b")) == -1


def test_thousand_diff_axiom_pairs():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        s, t = fin_array(rng), fin_array(rng)
        if s == t:
            continue
        j = diff_index(s, t)
        assert s[j] != t[j]
        assert j == scan_diff(s, t)
        done += 1


def test_model_lookup_errors():
    m = Model({"k": 1}, {"a": ZERO})
    with pytest.raises(UnassignedSymbolError) as exc:
        m.int_value("l")
    assert exc.value.name == "l"
    with pytest.raises(KeyError):
        m.array_value("b")


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.sampled_from("klmn"), st.integers(-10**30, 10**30)),
       st.dictionaries(st.sampled_from("abc"), arrays()))
def test_json_round_trip_is_exact(ints, arrs):
    m = Model(ints, arrs)
    text = dumps_model(m)
    back = loads_model(text)
    assert back == m
    for name, arr in arrs.items():
        got = back.array_value(name)
        assert (got.left_tail, got.lo, got.window, got.right_tail) == \
            (arr.left_tail, arr.lo, arr.window, arr.right_tail)
    assert dumps_model(back) == text
    assert model_from_json(json.loads(json.dumps(model_to_json(m)))) == m


def test_json_shape():
    obj = model_to_json(paper_model(2))
    assert obj["constants"] == {"k": 2, "l": 2}
    assert obj["arrays"]["a"] == {"leftTail": 0, "lo": 1, "window": [1, 1], "rightTail": 1}
