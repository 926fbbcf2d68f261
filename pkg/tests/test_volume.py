from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SIMPLE_BUILTINS
from oracles import displaced_volume
from polyih.builtins import builtin_polytope
from polyih.errors import DegreeMismatch, NotInterior, NotSimple, ZeroTopForm
from polyih.exact import MultiPoly, rank
from polyih.polytope import enumerate_vertices, face_of
from polyih.resolution import resolution_at
from polyih.symexpr import SymExpr, parse_symexpr
from polyih.volume import (
    VolumeForm,
    intersection_number,
    lefschetz_element,
    locally_trivial_space,
    resolution_form,
    top_volume_form,
    translation_thickenings,
    volume_polynomial,
)

F = Fraction
small = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def eps_var(f, i):
    return MultiPoly.variable(f, i)


def in_span(vecs, target):
    return rank(list(vecs) + [list(target)]) == rank(list(vecs))


def test_cube_polynomial():
    P = builtin_polytope("cube(3)")
    one = MultiPoly.constant(6, 1)
    e = lambda i: eps_var(6, i)
    expected = (one - e(0) - e(1)) * (one - e(2) - e(3)) * (one - e(4) - e(5))
    assert volume_polynomial(P) == expected
    tau = lambda i: MultiPoly.variable(6, i)
    assert top_volume_form(expected, 3).top == (tau(0) + tau(1)) * (tau(2) + tau(3)) * (tau(4) + tau(5))


def test_simplex_polynomial():
    P = builtin_polytope("simplex(3)")
    s = MultiPoly.constant(4, 1) - sum((eps_var(4, i) for i in range(4)), MultiPoly(4))
    assert volume_polynomial(P) == s**3 * F(1, 6)
    t = sum((MultiPoly.variable(4, i) for i in range(4)), MultiPoly(4))
    assert top_volume_form(volume_polynomial(P), 3).top == t**3 * F(1, 6)


def test_nonsimple_rejected(pyr):
    with pytest.raises(NotSimple):
        volume_polynomial(pyr)


def test_ns_polynomial_against_hull_oracle(pyr, pyr_family):
    r = pyr_family.resolutions.by_label("Δ_NS")
    v = volume_polynomial(r)
    assert v.degree() == 3
    # walk inside the chamber; every point must keep the type
    direction = [F(1, 7), F(-2, 7), F(3, 7), F(1, 7), F(-1, 7)]
    scale = min(abs(e) for e in r.eps) / 16
    for t in range(5):
        eps = [e + t * scale * d for e, d in zip(r.eps, direction)]
        assert resolution_at(pyr, eps).fingerprint == r.fingerprint
        assert v.eval_at(eps) == displaced_volume(pyr, eps)


@pytest.mark.parametrize("spec", ["cube(3)", "prism", "simplex(3)", "product(simplex(2),simplex(2))"])
def test_simple_polynomials_against_hull_oracle(spec):
    P = builtin_polytope(spec)
    v = volume_polynomial(P)
    for k in range(4):
        eps = [F((3 * i + k) % 5 - 2, 40) for i in range(P.nfacets)]
        assert v.eval_at(eps) == displaced_volume(P, eps)


def test_interpolation_agreement(pyr, pyr_family):
    # the chamber polynomial restricted to a line is the cubic through 4 oracle values
    r = pyr_family.resolutions.by_label("Δ_EW")
    v = volume_polynomial(r)
    d = [F(1), F(2), F(-1), F(0), F(1)]
    h = min(abs(e) for e in r.eps) / 32
    ts = [0, 1, 2, 3]
    ys = [displaced_volume(pyr, [e + t * h * di for e, di in zip(r.eps, d)]) for t in ts]
    t4 = 4
    # Lagrange extrapolation to t = 4
    pred = F(0)
    for j, tj in enumerate(ts):
        w = F(1)
        for m, tm in enumerate(ts):
            if m != j:
                w *= F(t4 - tm, tj - tm)
        pred += ys[j] * w
    assert pred == v.eval_at([e + t4 * h * di for e, di in zip(r.eps, d)])


def test_intersection_numbers_cube():
    P = builtin_polytope("cube(3)")
    B = top_volume_form(volume_polynomial(P), 3)
    assert intersection_number(B, parse_symexpr("x0*y0*z0", P.names)) == 1
    assert intersection_number(B, parse_symexpr("x0*x1*z0", P.names)) == 0
    with pytest.raises(DegreeMismatch):
        intersection_number(B, parse_symexpr("x0*y0", P.names))


def test_pyramid_raw_and_calibrated(pyr, pyr_family):
    ns = resolution_form(pyr_family.resolutions.by_label("Δ_NS"))
    neb = parse_symexpr("N⌢E⌢B", pyr.names)
    assert intersection_number(ns, neb) == F(1, 2)
    assert intersection_number(ns, parse_symexpr("N*E*W", pyr.names), calibration=2) == 1


def test_zero_top_form():
    with pytest.raises(ZeroTopForm):
        top_volume_form(MultiPoly.constant(3, 1), 3)
    with pytest.raises(DegreeMismatch):
        VolumeForm(2, 2, MultiPoly.variable(2, 0))


def test_translations():
    P = builtin_polytope("cube(3)")
    T = translation_thickenings(P)
    assert [list(t) for t in T] == [[-1, 1, 0, 0, 0, 0], [0, 0, -1, 1, 0, 0], [0, 0, 0, 0, -1, 1]]


def test_pyramid_translations(pyr):
    T = translation_thickenings(pyr)
    assert len(T) == 3 and rank([list(t) for t in T]) == 3
    for target in ([1, -1, 0, 0, 0], [0, 0, 1, -1, 0], [1, 0, 1, 0, -1]):
        assert in_span(T, target)
    t = (F(1, 2), F(1, 2), F(1, 2))
    combo = [sum(tk * T[k][i] for k, tk in enumerate(t)) for i in range(5)]
    assert combo == [1, 0, 1, 0, -1]


@pytest.mark.parametrize("spec", SIMPLE_BUILTINS + ["pyr-square", "octahedron", "pyr(pyr-square)"])
def test_translation_space_dimension(spec):
    P = builtin_polytope(spec)
    assert rank([list(t) for t in translation_thickenings(P)]) == P.dim


def test_lefschetz_element(pyr):
    cube = builtin_polytope("cube(3)")
    assert lefschetz_element(cube, [F(1, 2)] * 3) == (F(1, 2),) * 6
    assert lefschetz_element(pyr, [0, 0, F(1, 4)]) == (F(3, 4),) * 4 + (F(1, 2),)
    w1 = lefschetz_element(pyr)
    w2 = lefschetz_element(pyr, [F(1, 10), F(-1, 5), F(1, 3)])
    assert in_span(translation_thickenings(pyr), [a - b for a, b in zip(w1, w2)])
    with pytest.raises(NotInterior):
        lefschetz_element(pyr, [0, 0, 1])


def test_locally_trivial(pyr):
    S1 = locally_trivial_space(pyr)
    assert len(S1) == 4
    assert all(v[0] + v[1] == v[2] + v[3] for v in S1)
    for spec in ["pyr-square", "octahedron", "pyr(pyr-square)", "cube(3)"]:
        P = builtin_polytope(spec)
        S = locally_trivial_space(P)
        assert in_span(S, lefschetz_element(P))
        if enumerate_vertices(P).simple:
            assert len(S) == P.nfacets


def _all_forms(pyr_family, octa_family):
    forms = [(f"simple {s}", top_volume_form(volume_polynomial(builtin_polytope(s)), builtin_polytope(s).dim), builtin_polytope(s))
             for s in SIMPLE_BUILTINS]
    for fam in (pyr_family, octa_family):
        forms += [(lab, B, fam.base) for lab, B in zip(fam.labels, fam.forms)]
    return forms


def test_translation_nullity_exhaustive_slots(pyr_family, octa_family):
    for label, B, P in _all_forms(pyr_family, octa_family):
        f, n = P.nfacets, P.dim
        for t in translation_thickenings(P):
            T = SymExpr.thickening(t)
            for m in combinations_with_replacement(range(f), n - 1):
                x = T
                for i in m:
                    x = x * SymExpr.facet(f, i)
                assert B.intersection(x) == 0, (label, t, m)


@pytest.mark.parametrize("spec", SIMPLE_BUILTINS)
def test_empty_intersection_nullity(spec):
    P = builtin_polytope(spec)
    V = enumerate_vertices(P)
    B = top_volume_form(volume_polynomial(P, V=V), P.dim)
    for S in combinations(range(P.nfacets), P.dim):
        if not face_of(V, S):
            assert B.polarized(*[[int(k == i) for k in range(P.nfacets)] for i in S]) == 0


@pytest.mark.parametrize("spec", SIMPLE_BUILTINS)
def test_scaling_identity_polynomial(spec):
    P = builtin_polytope(spec)
    V = enumerate_vertices(P)
    v = volume_polynomial(P, V=V)
    w = lefschetz_element(P, V=V)
    t = MultiPoly.variable(1, 0)
    along = v.substitute([t * (-wi) for wi in w])
    one = MultiPoly.constant(1, 1)
    assert along == (one + t) ** P.dim * v.eval_at([0] * P.nfacets)
    B = top_volume_form(v, P.dim)
    assert B.polarized(*[w] * P.dim) == v.eval_at([0] * P.nfacets)


pyr_args = st.lists(st.lists(small, min_size=5, max_size=5), min_size=3, max_size=3)


@given(pyr_args, small, st.lists(small, min_size=5, max_size=5))
@settings(max_examples=40, deadline=None)
def test_polarized_form_symmetric_and_linear(pyr_family, args, c, z):
    for B in pyr_family.forms:
        x, y, w = args
        assert B.polarized(x, y, w) == B.polarized(y, w, x) == B.polarized(w, x, y) == B.polarized(x, w, y)
        xz = [a + c * b for a, b in zip(x, z)]
        assert B.polarized(xz, y, w) == B.polarized(x, y, w) + c * B.polarized(z, y, w)
        T = translation_thickenings(pyr_family.base)
        for t in T:
            assert B.polarized(x, t, w) == 0


def test_intersection_is_n_factorial_polarized(pyr_family):
    B = pyr_family.forms[0]
    x = parse_symexpr("N*E*W + 2*S*S*B", pyr_family.base.names)
    e = lambda i: [int(k == i) for k in range(5)]
    pol = B.polarized(e(0), e(2), e(3)) + 2 * B.polarized(e(1), e(1), e(4))
    assert B.intersection(x) == factorial(3) * pol
