"""H-represented polytopes: validation, vertex enumeration, face lattices."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

from .errors import DuplicateName, Empty, LowerDimensional, ParseError, Redundant, Unbounded
from .exact import ZERO, det, format_scalar, inverse, rank, rank_nullspace, solve, to_scalar


@dataclass(frozen=True)
class HPolytope:
    """Facet rows ``<a_i, v> + b_i >= 0``, one per named facet."""

    dim: int
    names: tuple[str, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    label: str = field(default="", compare=False)

    @property
    def nfacets(self) -> int:
        return len(self.names)

    def alpha(self, i: int, v: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.A[i], v)), ZERO) + self.b[i]

    def slacks(self, v: Sequence[Fraction]) -> list[Fraction]:
        return [self.alpha(i, v) for i in range(self.nfacets)]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no facet named {name!r}") from None

    def with_offsets(self, b: Sequence[Fraction], label: str | None = None) -> "HPolytope":
        return HPolytope(self.dim, self.names, self.A, tuple(b), self.label if label is None else label)

    def rows(self) -> list[dict]:
        return [
            {"name": nm, "a": [format_scalar(x) for x in a], "b": format_scalar(b)}
            for nm, a, b in zip(self.names, self.A, self.b)
        ]

    def to_json(self) -> dict:
        return {"dim": self.dim, "facets": self.rows()}


@dataclass(frozen=True)
class VertexData:
    points: tuple[tuple[Fraction, ...], ...]
    incidence: tuple[frozenset[int], ...]
    simple: bool

    def __len__(self):
        return len(self.points)

    def centroid(self) -> tuple[Fraction, ...]:
        m = len(self.points)
        return tuple(sum(col, ZERO) / m for col in zip(*self.points))


@dataclass(frozen=True)
class Face:
    dim: int
    facets: frozenset[int]
    vertices: frozenset[int]


@dataclass(frozen=True)
class FaceLattice:
    dim: int
    faces: tuple[Face, ...]  # sorted by (dim, sorted vertices)
    covers: tuple[tuple[int, int], ...]  # (lower, upper) index pairs

    def by_dim(self, d: int) -> list[Face]:
        return [F for F in self.faces if F.dim == d]

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.by_dim(d)) for d in range(self.dim))

    def euler_ok(self) -> bool:
        n = self.dim
        return sum((-1) ** i * fi for i, fi in enumerate(self.f_vector)) == 1 - (-1) ** n


@dataclass(frozen=True, order=True)
class Fingerprint:
    """Sorted vertex incidence sets, facet identities kept."""

    sets: tuple[tuple[int, ...], ...]

    def digest(self) -> str:
        text = ";".join(",".join(map(str, s)) for s in self.sets)
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    def named(self, names: Sequence[str]) -> list[list[str]]:
        return [[names[i] for i in s] for s in self.sets]


# ---------------------------------------------------------------------------
# vertex enumeration


@lru_cache(maxsize=256)
def _subset_solvers(A: tuple[tuple[Fraction, ...], ...], n: int):
    """Integer row scalings and adjugates of every nonsingular n-subset of rows."""
    scales = []
    int_rows = []
    for row in A:
        s = lcm(*(x.denominator for x in row)) if row else 1
        scales.append(s)
        int_rows.append(tuple(int(x * s) for x in row))
    solvers = []
    for I in combinations(range(len(A)), n):
        M = [[Fraction(x) for x in int_rows[i]] for i in I]
        inv = inverse(M)
        if inv is None:
            continue
        d = _int_det(int_rows, I)
        adj = [[int(x * d) for x in row] for row in inv]
        solvers.append((I, adj, d))
    return tuple(scales), tuple(int_rows), tuple(solvers)


def _int_det(rows, I) -> int:
    return int(det([[Fraction(x) for x in rows[i]] for i in I]))


def _vertices_raw(A, b, n):
    scales, rows, solvers = _subset_solvers(A, n)
    c = [bi * s for bi, s in zip(b, scales)]
    D = lcm(*(x.denominator for x in c)) if c else 1
    C = [int(x * D) for x in c]
    found: dict[tuple[Fraction, ...], frozenset[int]] = {}
    m = len(rows)
    for I, adj, d in solvers:
        rhs = [-C[i] for i in I]
        W = [sum(a * r for a, r in zip(arow, rhs)) for arow in adj]
        sgn = 1 if d > 0 else -1
        tight = []
        ok = True
        for j in range(m):
            s = (sum(a * w for a, w in zip(rows[j], W)) + C[j] * d) * sgn
            if s < 0:
                ok = False
                break
            if s == 0:
                tight.append(j)
        if not ok:
            continue
        denom = d * D
        pt = tuple(Fraction(w, denom) for w in W)
        if pt not in found:
            found[pt] = frozenset(tight)
    return found


def enumerate_vertices(P: HPolytope) -> VertexData:
    """All vertices with complete incidence sets, by exhaustive n-subset solves."""
    found = _vertices_raw(P.A, P.b, P.dim)
    pts = sorted(found)
    inc = tuple(found[p] for p in pts)
    simple = bool(pts) and all(len(s) == P.dim for s in inc)
    return VertexData(tuple(pts), inc, simple)


def affine_dimension(points: Sequence[Sequence[Fraction]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    return rank(diffs, len(p0)) if diffs else 0


def _recession_ray(A, n) -> bool:
    """True when ``{d : A d >= 0}`` contains a nonzero direction."""
    if rank(A, n) < n:
        return True
    for I in combinations(range(len(A)), n - 1):
        r, null = rank_nullspace([A[i] for i in I], n)
        if r != n - 1:
            continue
        d = null[0]
        vals = [sum((a * x for a, x in zip(row, d)), ZERO) for row in A]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            return True
    return False


def parse_validate(raw, label: str = "") -> HPolytope:
    """Build an irredundant, bounded, full-dimensional polytope.

    ``raw`` is either the JSON object ``{"dim": n, "facets": [...]}`` or a
    sequence of ``(name, a, b)`` triples.
    """
    try:
        if isinstance(raw, dict):
            n = int(raw["dim"])
            triples = [(f["name"], f["a"], f["b"]) for f in raw["facets"]]
        else:
            triples = [tuple(t) for t in raw]
            n = len(triples[0][1]) if triples else 0
        names = tuple(str(t[0]) for t in triples)
        A = tuple(tuple(to_scalar(x) for x in t[1]) for t in triples)
        b = tuple(to_scalar(t[2]) for t in triples)
    except (KeyError, TypeError, ValueError, ZeroDivisionError, IndexError) as exc:
        raise ParseError(f"malformed polytope description: {exc}") from exc
    if n < 1:
        raise ParseError("dimension must be at least 1")
    for nm, row in zip(names, A):
        if len(row) != n:
            raise ParseError(f"facet {nm!r} has {len(row)} coefficients, expected {n}")
    dupes = sorted({nm for nm in names if names.count(nm) > 1})
    if dupes:
        raise DuplicateName(dupes)

    P = HPolytope(n, names, A, b, label)
    if _recession_ray(list(A), n):
        raise Unbounded("polyhedron is unbounded")
    V = enumerate_vertices(P)
    if not V.points:
        raise Empty("inequality system is infeasible")
    if affine_dimension(V.points) < n:
        raise LowerDimensional("polytope is not full-dimensional")

    # a row is irredundant iff it is tight on an (n-1)-dimensional face that
    # no other row (positively proportional to it) also cuts out
    redundant = []
    for i in range(len(names)):
        tight = [p for p, inc in zip(V.points, V.incidence) if i in inc]
        if not any(A[i]) or affine_dimension(tight) < n - 1 or any(
            j != i and any(A[j]) and _proportional(A[i] + (b[i],), A[j] + (b[j],)) for j in range(len(names))
        ):
            redundant.append(names[i])
    if redundant:
        raise Redundant(redundant)
    return P


def _proportional(u, v) -> bool:
    k = next(j for j, x in enumerate(u) if x)
    if not v[k] or (u[k] > 0) != (v[k] > 0):
        return False
    r = v[k] / u[k]
    return all(y == r * x for x, y in zip(u, v))


# ---------------------------------------------------------------------------
# faces


def face_lattice(P: HPolytope, V: VertexData | None = None) -> FaceLattice:
    V = V or enumerate_vertices(P)
    n, f = P.dim, P.nfacets
    nv = len(V.points)
    facet_sets = [frozenset(k for k in range(nv) if i in V.incidence[k]) for i in range(f)]
    faces_v: set[frozenset[int]] = set(facet_sets)
    frontier = set(faces_v)
    while frontier:
        new = set()
        for G in frontier:
            for F in facet_sets:
                H = G & F
                if H and H not in faces_v:
                    new.add(H)
        faces_v |= new
        frontier = new
    faces_v.add(frozenset(range(nv)))

    def facets_of(vs):
        if not vs:
            return frozenset(range(f))
        return frozenset.intersection(*(V.incidence[k] for k in vs))

    faces = [Face(-1, frozenset(range(f)), frozenset())]
    for vs in faces_v:
        faces.append(Face(affine_dimension([V.points[k] for k in sorted(vs)]), facets_of(vs), vs))
    faces.sort(key=lambda F: (F.dim, sorted(F.vertices)))
    covers = []
    for i, G in enumerate(faces):
        for j, H in enumerate(faces):
            if H.dim == G.dim + 1 and G.vertices <= H.vertices:
                covers.append((i, j))
    return FaceLattice(n, tuple(faces), tuple(covers))


def fingerprint(V: VertexData) -> Fingerprint:
    return Fingerprint(tuple(sorted(tuple(sorted(s)) for s in V.incidence)))


def face_of(V: VertexData, facet_subset: Iterable[int]) -> frozenset[int]:
    """Vertices of the base incident to every facet in the subset."""
    S = frozenset(facet_subset)
    return frozenset(k for k, inc in enumerate(V.incidence) if S <= inc)


def is_extreme(points: Sequence[Sequence[Fraction]], k: int) -> bool:
    """Whether points[k] is not a convex combination of the other points.

    Searches basic solutions of sum(l_j p_j) = p_k, sum(l_j) = 1, l >= 0.
    """
    others = [p for j, p in enumerate(points) if j != k]
    target = list(points[k]) + [Fraction(1)]
    n = len(target)
    cols = [list(p) + [Fraction(1)] for p in others]
    for size in range(1, min(n, len(cols)) + 1):
        for J in combinations(range(len(cols)), size):
            M = [[cols[j][r] for j in J] for r in range(n)]
            x = solve(M, target)
            if x is not None and all(v >= 0 for v in x):
                return False
    return True
