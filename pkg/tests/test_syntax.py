import pytest

from apfrag import syntax as sx
from apfrag.errors import ShadowingError, SortError
from generators import A, B, K, L


def test_rank_checked_application():
    with pytest.raises(SortError) as exc:
        sx.App(sx.SELECT, (K, K))
    assert exc.value.position == 0
    with pytest.raises(SortError) as exc:
        sx.App(sx.STORE, (A, K))
    assert "expects 3" in str(exc.value)
    with pytest.raises(SortError):
        sx.Atom(sx.select(A, K))


def test_eq_picks_rank():
    assert sx.eq(A, B).term.symbol == sx.EQ_ARRAY
    assert sx.eq(K, L).term.symbol == sx.EQ


def test_size_counts_nodes():
    assert sx.size(sx.diff(A, B)) == 3
    assert sx.size(sx.TRUE) == 1
    atom = sx.le(sx.select(A, sx.diff(A, B)), sx.select(B, sx.diff(A, B)))
    assert sx.size(atom) == 11
    j = sx.Var("j")
    assert sx.size(sx.forall(j, sx.le(sx.select(B, j), 1))) == 6


def test_free_vars_and_ground():
    j, i = sx.Var("j"), sx.Var("i")
    body = sx.lt(sx.select(A, j), sx.select(B, i))
    assert sx.free_vars(body) == {"i", "j"}
    f = sx.forall(j, body)
    assert not sx.is_ground(f)
    assert not sx.free_vars(sx.forall(i, f))
    assert sx.is_ground(sx.select(A, 3))


def test_shadowing_rejected_at_any_depth():
    j = sx.Var("j")
    inner = sx.forall(j, sx.le(sx.select(A, j), 0))
    with pytest.raises(ShadowingError):
        sx.forall(j, sx.And((sx.TRUE, sx.Not(inner))))
    with pytest.raises(ShadowingError):
        sx.Forall((j, j), sx.TRUE)


def test_substitute():
    j = sx.Var("j")
    body = sx.le(sx.select(A, j), j)
    out = sx.substitute(body, j, K)
    assert out == sx.le(sx.select(A, K), K)
    with pytest.raises(ValueError):
        sx.substitute(body, j, sx.Var("i"))
    with pytest.raises(SortError):
        sx.substitute(body, j, A)
    with pytest.raises(ShadowingError):
        sx.substitute(sx.forall(j, body), j, K)


def test_partition():
    a_side = sx.forall(sx.Var("i"), sx.lt(sx.select(A, sx.Var("i")), sx.select(B, K)))
    b_side = sx.forall(sx.Var("j"), sx.Not(sx.lt(sx.select(A, L), sx.select(B, sx.Var("j")))))
    p = sx.SymbolPartition.of(a_side, b_side)
    assert {s.name for s in p.shared} == {"a", "b"}
    assert {s.name for s in p.a_local} == {"k"}
    assert {s.name for s in p.b_local} == {"l"}
    assert p.is_shared(sx.SELECT)
    assert not p.is_shared(sx.int_const("k"))


def test_structural_equality_and_hash():
    x = sx.le(sx.select(A, 1), 2)
    y = sx.le(sx.select(A, 1), 2)
    assert x == y and hash(x) == hash(y)
    assert x != sx.le(sx.select(B, 1), 2)


def test_example_free_symbols_and_instantiation():
    from apfrag.interp import example_problem
    p = example_problem()
    assert {s.name for s in sx.free_symbols(p.a)} == {"a", "b", "k"}
    assert {s.name for s in sx.free_symbols(p.b)} == {"a", "b", "l"}
    assert sx.free_symbols(sx.IntLit(0)) == frozenset()
    assert sx.substitute(p.a.body, p.a.vars[0], L) == sx.lt(sx.select(A, L), sx.select(B, K))
    assert sx.substitute(p.b.body, p.b.vars[0], K) == sx.Not(sx.lt(sx.select(A, L), sx.select(B, K)))
    assert sx.substitute(p.a.body, sx.Var("zz"), K) == p.a.body


def test_rank_examples():
    assert sx.select(A, 3).sort == sx.INT
    assert sx.store(A, 3, 5).sort == sx.ARRAY
    with pytest.raises(SortError) as exc:
        sx.select(3, A)
    assert exc.value.position == 0


def test_substitution_keeps_symbols_within_bounds():
    j = sx.Var("j")
    f = sx.le(sx.select(sx.store(A, j, K), j), 0)
    t = sx.select(B, L)
    out = sx.substitute(f, j, t)
    assert sx.free_symbols(out) <= sx.free_symbols(f) | sx.free_symbols(t)
    sx.check_well_formed(out)
