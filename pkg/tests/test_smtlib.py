import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from apfrag import syntax as sx
from apfrag.errors import ParseError
from apfrag.interp import example_problem
from apfrag.smtlib import Script, format_formula, format_script, parse_formula, parse_script
from generators import FormulaGen

DATA = Path(__file__).parent / "data"
DECLS = "(declare-const a (Array Int Int))\n(declare-const b (Array Int Int))\n" \
        "(declare-const k Int)\n(declare-const l Int)\n"


def test_example_script():
    script = parse_script((DATA / "example1.smt2").read_text())
    p = example_problem()
    assert script.assertions == [p.a, p.b]
    assert set(script.declarations) == {"a", "b", "k", "l"}


def test_empty_script():
    script = parse_script("")
    assert script == Script()
    assert format_script(script) == ""


def test_select_arity_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_script(DECLS + "(assert (< (select a) 0))")
    assert exc.value.kind == "arity"
    assert (exc.value.line, exc.value.column) == (5, 12)


@pytest.mark.parametrize("text,kind,line,col", [
    ("(assert (< x 0))", "unknown-symbol", 1, 12),
    ("(assert (< 0 1)", "lexical", 1, 1),
    ("(assert (< 0 1)))", "lexical", 1, 17),
    ("(assert (< 0 #))", "lexical", 1, 14),
    ("(declare-const a (Array Int Int))\n(assert (< a 0))", "sort-mismatch", 2, 12),
    ("(declare-const k Int)\n(assert (= (select k 0) 0))", "sort-mismatch", 2, 20),
    ("(assert (< 0 1 2))", "arity", 1, 9),
    ("(declare-const a Bool)", "sort-mismatch", 1, 18),
    ("(frobnicate)", "unknown-symbol", 1, 2),
])
def test_errors_carry_kind_and_position(text, kind, line, col):
    with pytest.raises(ParseError) as exc:
        parse_script(text)
    assert (exc.value.kind, exc.value.line, exc.value.column) == (kind, line, col)


def test_exists_is_negated_forall():
    f = parse_formula("(exists ((j Int)) (< (select a j) 0))", parse_script(DECLS).declarations)
    assert isinstance(f, sx.Not) and isinstance(f.arg, sx.Forall)
    assert isinstance(f.arg.body, sx.Not)


def test_shadowing_binder_is_a_syntax_error():
    with pytest.raises(ParseError) as exc:
        parse_script(DECLS + "(assert (forall ((j Int)) (forall ((j Int)) (< (select a j) 0))))")
    assert exc.value.kind == "syntax"


def test_negative_literals_and_nary_ops():
    decls = parse_script(DECLS).declarations
    f = parse_formula("(<= (- 3) (+ k 1 2))", decls)
    assert format_formula(f) == "(<= (- 3) (+ (+ k 1) 2))"
    g = parse_formula("(=> (< k 0) (< l 0) (< 1 0))", decls)
    assert isinstance(g, sx.Implies) and isinstance(g.rhs, sx.Implies)


def test_diff_is_builtin():
    f = parse_formula("(< (diff a b) 0)", parse_script(DECLS).declarations)
    assert f.term.args[0].symbol == sx.DIFF


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_print_parse_round_trip(seed):
    gen = FormulaGen(random.Random(seed))
    script = parse_script(DECLS)
    script.assertions = [gen.formula() for _ in range(3)]
    text = format_script(script)
    again = parse_script(text)
    assert again == script
    assert format_script(again) == text


def test_bare_select_assert_is_arity_error():
    with pytest.raises(ParseError) as exc:
        parse_script(DECLS + "(assert (select a))")
    assert (exc.value.kind, exc.value.line, exc.value.column) == ("arity", 5, 9)
    with pytest.raises(ParseError) as exc:
        parse_script(DECLS + "(assert (select a 0))")
    assert exc.value.kind == "sort-mismatch"
