from fractions import Fraction
from random import Random

import pytest

from oracles import brute_vertices
from polyih.builtins import builtin_polytope
from polyih.errors import DimensionTooLarge, DuplicateName, LowerDimensional, ParseError, Redundant, Unbounded, UnknownBuiltin
from polyih.polytope import enumerate_vertices, face_lattice, fingerprint, is_extreme, parse_validate

F = Fraction

CUBE_ROWS = [
    ("x0", [1, 0, 0], 0), ("x1", [-1, 0, 0], 1),
    ("y0", [0, 1, 0], 0), ("y1", [0, -1, 0], 1),
    ("z0", [0, 0, 1], 0), ("z1", [0, 0, -1], 1),
]

ALL_BUILTINS = ["cube(3)", "simplex(3)", "simplex(4)", "prism", "pyr-square", "octahedron",
                "pyr(pyr-square)", "cube(4)", "product(simplex(2),simplex(2))", "cross(2)"]


def test_parse_cube():
    P = parse_validate(CUBE_ROWS)
    assert (P.dim, P.nfacets) == (3, 6)


def test_parse_json_shape():
    raw = {"dim": 2, "facets": [
        {"name": "a", "a": ["1", "0"], "b": "0"},
        {"name": "b", "a": ["0", "1"], "b": "0"},
        {"name": "c", "a": ["-1/2", "-1/2"], "b": "1"},
    ]}
    P = parse_validate(raw)
    assert P.A[2] == (F(-1, 2), F(-1, 2))
    assert len(enumerate_vertices(P)) == 3


def test_redundant_row_is_named():
    with pytest.raises(Redundant) as exc:
        parse_validate(CUBE_ROWS + [("extra", [1, 0, 0], 1)])
    assert exc.value.names == ["extra"]


def test_unbounded_and_lower_dimensional():
    with pytest.raises(Unbounded):
        parse_validate([("x", [1], 0)])
    with pytest.raises(LowerDimensional):
        parse_validate([("a", [1, 0], 0), ("b", [-1, 0], 0), ("c", [0, 1], 0), ("d", [0, -1], 1)])


def test_duplicate_and_malformed():
    with pytest.raises(DuplicateName) as exc:
        parse_validate([("a", [1], 0), ("a", [-1], 1)])
    assert exc.value.names == ["a"]
    with pytest.raises(ParseError):
        parse_validate({"dim": 2, "facets": [{"name": "a", "a": ["x", "0"], "b": "0"}]})
    with pytest.raises(ParseError):
        parse_validate([("a", [1, 0], 0), ("b", [1], 0)])


def test_cube_vertices():
    V = enumerate_vertices(parse_validate(CUBE_ROWS))
    assert len(V) == 8 and V.simple
    assert all(len(s) == 3 for s in V.incidence)


def test_pyramid_vertices(pyr):
    V = enumerate_vertices(pyr)
    assert len(V) == 5 and not V.simple
    apex = V.points.index((0, 0, 1))
    assert {pyr.names[i] for i in V.incidence[apex]} == {"N", "S", "E", "W"}
    assert pyr.names == ("N", "S", "E", "W", "B")
    assert pyr.A[4] == (0, 0, 2)


def test_octahedron_vertices(octa):
    V = enumerate_vertices(octa)
    assert len(V) == 6 and not V.simple
    assert all(len(s) == 4 for s in V.incidence)


@pytest.mark.parametrize("spec,fv", [("pyr-square", (5, 8, 5)), ("cube(3)", (8, 12, 6)), ("octahedron", (6, 12, 8)),
                                     ("prism", (6, 9, 5)), ("pyr(pyr-square)", (6, 13, 13, 6))])
def test_f_vectors(spec, fv):
    assert face_lattice(builtin_polytope(spec)).f_vector == fv


@pytest.mark.parametrize("spec", ALL_BUILTINS)
def test_builtin_invariants(spec):
    P = builtin_polytope(spec)
    V = enumerate_vertices(P)
    L = face_lattice(P, V)
    assert L.euler_ok()
    # vertices agree with an independent brute-force solve
    assert list(V.points) == brute_vertices(P.A, P.b)
    for p, inc in zip(V.points, V.incidence):
        slack = P.slacks(p)
        assert {i for i, s in enumerate(slack) if s == 0} == inc
        assert all(s >= 0 for s in slack)
        assert len(inc) >= P.dim
    assert V.simple == all(len(s) == P.dim for s in V.incidence)
    if len(V) <= 16:
        assert all(is_extreme(V.points, k) for k in range(len(V)))


@pytest.mark.parametrize("spec", ["pyr-square", "octahedron", "prism"])
def test_vertices_invariant_under_facet_reordering(spec):
    P = builtin_polytope(spec)
    order = list(range(P.nfacets))
    Random(7).shuffle(order)
    Q = parse_validate([(P.names[i], P.A[i], P.b[i]) for i in order])
    V, W = enumerate_vertices(P), enumerate_vertices(Q)
    assert V.points == W.points
    for inc, jnc in zip(V.incidence, W.incidence):
        assert {P.names[i] for i in inc} == {Q.names[j] for j in jnc}


def test_builtin_names_and_guards():
    assert builtin_polytope("cube(3)").nfacets == 6
    P4 = builtin_polytope("pyr(pyr-square)")
    assert (P4.dim, P4.nfacets) == (4, 6)
    with pytest.raises(UnknownBuiltin):
        builtin_polytope("dodecahedron")
    with pytest.raises(DimensionTooLarge):
        builtin_polytope("simplex(7)")
    with pytest.raises(ParseError):
        builtin_polytope("cube(3")


def test_fingerprint_counts_and_digest():
    V = enumerate_vertices(builtin_polytope("cube(3)"))
    fp = fingerprint(V)
    assert len(fp.sets) == 8 and all(len(s) == 3 for s in fp.sets)
    assert fp.digest() == fingerprint(enumerate_vertices(builtin_polytope("cube(3)"))).digest()
