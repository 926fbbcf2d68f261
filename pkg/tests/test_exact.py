from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyih.exact import (
    MultiPoly,
    det,
    independent_rows,
    inverse,
    matmul,
    matvec,
    monomials,
    poly_ops,
    rank,
    rank_nullspace,
    solve,
    to_scalar,
)

F = Fraction

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows).map(lambda m: (m, c))
    )


def polys(nvars=3, max_terms=4, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, small, max_size=max_terms).map(lambda d: MultiPoly(nvars, d))


def test_nullspace_examples():
    assert rank_nullspace([[F(int(i == j)) for j in range(3)] for i in range(3)]) == (3, [])
    assert rank_nullspace([[F(1), F(1)], [F(1), F(1)]]) == (1, [[F(-1), F(1)]])
    r, null = rank_nullspace([[F(1), F(2), F(3)], [F(4), F(5), F(6)]])
    assert r == 2 and null == [[F(1), F(-2), F(1)]]


def test_empty_matrix_has_rank_zero():
    assert rank_nullspace([], 2) == (0, [[F(1), F(0)], [F(0), F(1)]])


@given(matrices())
def test_nullspace_annihilates(mc):
    M, c = mc
    r, null = rank_nullspace(M, c)
    assert r + len(null) == c
    for v in null:
        assert all(x == 0 for x in matvec(M, v)) if M else True


@given(matrices(), st.randoms(use_true_random=False), st.lists(small.filter(bool), min_size=4, max_size=4))
def test_rank_invariant_under_row_operations(mc, rnd, scales):
    M, c = mc
    perm = list(M)
    rnd.shuffle(perm)
    scaled = [[x * s for x in row] for row, s in zip(perm, scales * 2)]
    assert rank(M, c) == rank(perm, c) == rank(scaled, c)


@given(matrices())
def test_independent_rows_span(mc):
    M, c = mc
    idx = independent_rows(M, c)
    assert len(idx) == rank(M, c)
    assert rank([M[i] for i in idx], c) == len(idx)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(M):
    inv = inverse(M)
    if det(M) == 0:
        assert inv is None
    else:
        I = matmul(M, inv)
        assert I == [[F(int(i == j)) for j in range(3)] for i in range(3)]
        x = solve(M, [F(1), F(2), F(3)])
        assert matvec(M, x) == [1, 2, 3]


def test_scalars_are_lowest_terms():
    x = to_scalar("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert to_scalar(-3) == F(-3)
    with pytest.raises(TypeError):
        to_scalar(0.5)


def test_poly_examples():
    e = lambda i: MultiPoly.variable(6, i)
    one = MultiPoly.constant(6, 1)
    assert poly_ops(one - e(0), one - e(1), "mul") == one - e(0) - e(1) + e(0) * e(1)
    cube = (one - e(0) - e(1)) * (one - e(2) - e(3)) * (one - e(4) - e(5))
    assert poly_ops(cube, None, "homogeneous_part", 3) == -((e(0) + e(1)) * (e(2) + e(3)) * (e(4) + e(5)))
    s = MultiPoly.constant(4, 1) - sum((MultiPoly.variable(4, i) for i in range(4)), MultiPoly(4))
    assert poly_ops(s**3 * F(1, 6), None, "eval_at", [0] * 4) == F(1, 6)


def test_poly_variable_mismatch():
    with pytest.raises(ValueError):
        MultiPoly.variable(2, 0) + MultiPoly.variable(3, 0)
    with pytest.raises(ValueError):
        MultiPoly.variable(2, 0).eval_at([1, 2, 3])


def test_no_zero_coefficients_and_grlex_order():
    p = MultiPoly.variable(2, 0) - MultiPoly.variable(2, 0) + MultiPoly.variable(2, 1) ** 2 + MultiPoly.constant(2, 3)
    assert (0, 0) in p.terms and (1, 0) not in p.terms
    assert [e for e, _ in p.items()] == [(0, 0), (0, 2)]
    assert monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_poly_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys(), polys(), st.lists(small, min_size=3, max_size=3))
@settings(max_examples=60)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).eval_at(pt) == p.eval_at(pt) * q.eval_at(pt)
    assert (p + q).eval_at(pt) == p.eval_at(pt) + q.eval_at(pt)
    parts = sum((p.homogeneous_part(d) for d in range(p.degree() + 1)), MultiPoly(3))
    assert parts == p
