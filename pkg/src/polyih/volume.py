"""Volume polynomials, polarized top forms and distinguished thickenings.

Thickenings use the outward-positive convention ``tau = -eps``.  A
:class:`VolumeForm` stores the degree-n top part of the volume polynomial in
``tau``; its intersection number on a degree-n expression x is
``n! * B(x)``, which for a monomial ``tau^m`` is ``c_m * prod(m_j!)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DegreeMismatch, NotInterior, NotSimple, ZeroTopForm
from .exact import (
    ONE,
    ZERO,
    MultiPoly,
    inverse,
    multinomial_weight,
    rank_nullspace,
    to_scalar,
    transpose,
)
from .polytope import HPolytope, VertexData, enumerate_vertices
from .resolution import Resolution
from .symexpr import SymExpr


@dataclass(frozen=True)
class VolumeForm:
    n: int
    f: int
    top: MultiPoly
    moments: dict = field(compare=False, hash=False, repr=False, default=None)

    def __post_init__(self):
        if not self.top.is_homogeneous(self.n):
            raise DegreeMismatch(f"top form is not homogeneous of degree {self.n}")
        if self.moments is None:
            object.__setattr__(
                self, "moments", {m: c * multinomial_weight(m) for m, c in self.top.terms.items()}
            )

    def intersection(self, x: SymExpr) -> Fraction:
        """``n!`` times the polarized form applied to x."""
        if x.degree != self.n:
            raise DegreeMismatch(f"expected a degree-{self.n} expression, got degree {x.degree}")
        mom = self.moments
        return sum((c * mom[m] for m, c in x.poly.terms.items() if m in mom), ZERO)

    def polarized(self, *args: Sequence[Fraction]) -> Fraction:
        """B(x_1, ..., x_n) for thickening vectors x_k."""
        if len(args) != self.n:
            raise DegreeMismatch(f"form takes {self.n} arguments, got {len(args)}")
        prod = SymExpr.one(self.f)
        for x in args:
            prod = prod * SymExpr.thickening(x)
        return self.intersection(prod) / factorial(self.n)

    def value(self, tau: Sequence) -> Fraction:
        return self.top.eval_at(tau)


# ---------------------------------------------------------------------------
# volume polynomial


def _det_poly(M: list[list[MultiPoly]], nvars: int) -> MultiPoly:
    n = len(M)
    table: dict[frozenset[int], MultiPoly] = {frozenset(): MultiPoly.constant(nvars, 1)}
    for k in range(n):
        nxt: dict[frozenset[int], MultiPoly] = {}
        for S, val in table.items():
            for c in range(n):
                if c in S or M[k][c].is_zero():
                    continue
                sign = -1 if sum(1 for s in S if s > c) % 2 else 1
                term = val * M[k][c] * sign
                key = S | {c}
                nxt[key] = nxt[key] + term if key in nxt else term
        table = nxt
    return table.get(frozenset(range(n)), MultiPoly(nvars))


def _pulling_simplices(incidence: Sequence[frozenset[int]], n: int) -> list[tuple[int, ...]]:
    """Pulling triangulation of a simple polytope from its combinatorics alone.

    Faces are keyed by their facet set J (dimension n - |J|); each face is
    coned from its lowest-index vertex over the faces not containing it.
    """
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}
    nv = len(incidence)

    def tri(J: frozenset[int]) -> list[tuple[int, ...]]:
        if J in memo:
            return memo[J]
        verts = [v for v in range(nv) if J <= incidence[v]]
        w = verts[0]
        if len(J) == n:
            out = [(w,)]
        else:
            out = []
            nearby = set().union(*(incidence[v] for v in verts)) - J - incidence[w]
            for i in sorted(nearby):
                J2 = J | {i}
                if any(J2 <= incidence[v] for v in verts):
                    out.extend((w,) + S for S in tri(J2))
        memo[J] = out
        return out

    return tri(frozenset())


def volume_polynomial(P: HPolytope | Resolution, at: Sequence | None = None, V: VertexData | None = None) -> MultiPoly:
    """Volume of ``alpha_i v >= eps_i`` as an exact polynomial in eps.

    For a simple polytope the polynomial is valid near eps = 0.  For a
    :class:`Resolution` it is valid on the chamber of the resolution's type
    and is expressed in the base polytope's offsets.
    """
    if isinstance(P, Resolution):
        base, at, V = P.base, P.eps, P.vertices
    else:
        base = P
        V = V or enumerate_vertices(P)
        at = [ZERO] * P.nfacets if at is None else [to_scalar(x) for x in at]
    if not V.simple:
        raise NotSimple(f"{base.label or 'polytope'} is not simple")
    n, f = base.dim, base.nfacets
    coords: list[list[MultiPoly]] = []
    for inc in V.incidence:
        I = sorted(inc)
        inv = inverse([list(base.A[i]) for i in I])
        # v(eps) = A_I^{-1} (eps_I - b_I)
        row_polys = [MultiPoly.linear([ONE if j == i else ZERO for j in range(f)], -base.b[i]) for i in I]
        coords.append([sum((row_polys[k] * inv[r][k] for k in range(n)), MultiPoly(f)) for r in range(n)])

    total = MultiPoly(f)
    for simplex in _pulling_simplices(V.incidence, n):
        v0 = coords[simplex[0]]
        M = [[coords[v][r] - v0[r] for r in range(n)] for v in simplex[1:]]
        d = _det_poly(M, f)
        sign = d.eval_at(at)
        if sign == 0:
            raise ValueError("degenerate simplex in pulling triangulation")
        total = total + (d if sign > 0 else -d)
    return total * Fraction(1, factorial(n))


def top_volume_form(v: MultiPoly, n: int) -> VolumeForm:
    """Degree-n part of v with eps -> -tau substituted."""
    if v.degree() > n:
        raise DegreeMismatch(f"volume polynomial has degree {v.degree()} > {n}")
    top = v.homogeneous_part(n) * (-1) ** n
    if top.is_zero():
        raise ZeroTopForm("top-degree part vanishes")
    return VolumeForm(n, v.nvars, top)


def intersection_number(B: VolumeForm, x: SymExpr, calibration=None) -> Fraction:
    value = B.intersection(x)
    return value if calibration is None else value * to_scalar(calibration)


def resolution_form(r: Resolution) -> VolumeForm:
    if r.form is None:
        r.form = top_volume_form(volume_polynomial(r), r.base.dim)
    return r.form


# ---------------------------------------------------------------------------
# distinguished thickenings


def translation_thickenings(P: HPolytope) -> list[tuple[Fraction, ...]]:
    """Thickenings of rigid translations along each coordinate direction."""
    return [tuple(-P.A[i][k] for i in range(P.nfacets)) for k in range(P.dim)]


def lefschetz_element(P: HPolytope, p: Sequence | None = None, V: VertexData | None = None) -> tuple[Fraction, ...]:
    if p is None:
        p = (V or enumerate_vertices(P)).centroid()
    p = [to_scalar(x) for x in p]
    omega = tuple(P.alpha(i, p) for i in range(P.nfacets))
    if any(w <= 0 for w in omega):
        raise NotInterior(f"point {p} is not strictly inside the polytope")
    return omega


def locally_trivial_space(P: HPolytope, V: VertexData | None = None) -> list[list[Fraction]]:
    """Basis of thickenings that agree with some translation at every vertex."""
    V = V or enumerate_vertices(P)
    f, n = P.nfacets, P.dim
    rows = []
    for inc in V.incidence:
        if len(inc) <= n:
            continue
        I = sorted(inc)
        # dependencies among the incident normals cut out the local translations
        _, deps = rank_nullspace(transpose([list(P.A[i]) for i in I]), len(I))
        for lam in deps:
            row = [ZERO] * f
            for i, c in zip(I, lam):
                row[i] = c
            rows.append(row)
    _, basis = rank_nullspace(rows, f)
    return basis
