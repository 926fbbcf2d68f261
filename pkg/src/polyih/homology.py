"""Pairing matrices on symmetric powers and the quotients H^i = T^i / N^i."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegreeOverflow
from .exact import ZERO, independent_rows, monomials, rank, rank_nullspace, transpose
from .polytope import HPolytope, VertexData, enumerate_vertices, face_of
from .symexpr import SymExpr, pairing_index
from .volume import (
    VolumeForm,
    lefschetz_element,
    top_volume_form,
    translation_thickenings,
    volume_polynomial,
)

Matrix = list[list[Fraction]]


@dataclass
class GradedReport:
    """Per-degree dimensions, H-representatives and pairing matrices."""

    n: int
    f: int
    ambient: list[int]
    null: list[int]
    reps: list[list[SymExpr]]
    pairings: list[Matrix]
    extra: dict = field(default_factory=dict)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.reps)

    def palindromic(self) -> bool:
        d = self.dims
        return d == d[::-1]

    def to_json(self, names: Sequence[str]) -> dict:
        return {
            "dims": list(self.dims),
            "ambient": self.ambient,
            "null": self.null,
            "representatives": [[x.to_str(names) for x in reps] for reps in self.reps],
        }


def moment_matrix(B: VolumeForm, i: int) -> Matrix:
    """Matrix of n!·B on the monomial bases of Sym^i x Sym^(n-i)."""
    _, _, bn, table = pairing_index(B.f, i, B.n - i)
    mom = B.moments
    vals = [mom.get(m, ZERO) for m in bn]
    return [[vals[k] for k in row] for row in table]


def bilinear(X: Sequence[Sequence[Fraction]], P: Matrix, Y: Sequence[Sequence[Fraction]]) -> Matrix:
    """X P Y^T for coefficient vectors X (rows) and Y (rows)."""
    PY = []  # columns of P Y^T; all operands are mostly zero
    for y in Y:
        nz = [(j, c) for j, c in enumerate(y) if c]
        PY.append([sum((row[j] * c for j, c in nz if row[j]), ZERO) for row in P])
    out = []
    for x in X:
        nz = [(j, c) for j, c in enumerate(x) if c]
        out.append([sum((c * col[j] for j, c in nz if col[j]), ZERO) for col in PY])
    return out


def graded_quotient(
    n: int,
    f: int,
    bases: Sequence[Sequence[Sequence[Fraction]]],
    pairing: Callable[[int], Matrix],
) -> GradedReport:
    """Quotient each degree by the left kernel of its pairing against degree n-i.

    ``bases[i]`` lists coefficient vectors over the degree-i monomials and
    ``pairing(i)`` returns the bases[i] x bases[n-i] matrix.  Representatives
    are the earliest basis vectors with independent pairing rows.
    """
    mats = [pairing(i) for i in range(n + 1)]
    picks = []
    for i in range(n + 1):
        M = mats[i]
        picks.append(independent_rows(M, len(bases[n - i])) if M else [])
    reps, pairs, null = [], [], []
    for i in range(n + 1):
        mono = monomials(f, i)
        reps.append([SymExpr.from_vector(f, i, bases[i][k], mono) for k in picks[i]])
        pairs.append([[mats[i][a][b] for b in picks[n - i]] for a in picks[i]])
        null.append(len(bases[i]) - len(picks[i]))
    return GradedReport(n, f, [len(b) for b in bases], null, reps, pairs)


def _unit_basis(f: int, i: int) -> list[list[Fraction]]:
    size = len(monomials(f, i))
    return [[Fraction(int(a == b)) for b in range(size)] for a in range(size)]


def simple_form(P: HPolytope, V: VertexData | None = None) -> VolumeForm:
    return top_volume_form(volume_polynomial(P, V=V), P.dim)


def simple_homology(P: HPolytope, V: VertexData | None = None, B: VolumeForm | None = None) -> GradedReport:
    V = V or enumerate_vertices(P)
    B = B or simple_form(P, V)
    n, f = P.dim, P.nfacets
    bases = [_unit_basis(f, i) for i in range(n + 1)]
    report = graded_quotient(n, f, bases, lambda i: moment_matrix(B, i))
    report.extra["form"] = B
    return report


def cup_product(x: SymExpr, y: SymExpr, n: int | None = None) -> SymExpr:
    if n is not None and x.degree + y.degree > n:
        raise DegreeOverflow(f"degree {x.degree + y.degree} exceeds {n}")
    return x * y


def null_basis(B: VolumeForm, i: int) -> list[list[Fraction]]:
    """Basis of N^i as coefficient vectors over the degree-i monomials."""
    M = moment_matrix(B, i)
    _, null = rank_nullspace(transpose(M), len(M)) if M and M[0] else (0, [])
    return null


def relation_generators(P: HPolytope, V: VertexData, i: int) -> list[list[Fraction]]:
    """Translation multiples and empty-intersection monomials in degree i."""
    f = P.nfacets
    basis = monomials(f, i)
    out = []
    if i >= 1:
        for t in translation_thickenings(P):
            T = SymExpr.thickening(t)
            for m in monomials(f, i - 1):
                out.append((T * SymExpr.from_vector(f, i - 1, [1], [m])).to_vector(basis))
    for m in basis:
        support = [k for k, e in enumerate(m) if e]
        if not face_of(V, support):
            out.append([Fraction(int(x == m)) for x in basis])
    return out


def relations_generate_null(P: HPolytope, B: VolumeForm, V: VertexData | None = None) -> list[dict]:
    """Per degree: whether the standard relations lie in and span N^i."""
    V = V or enumerate_vertices(P)
    out = []
    for i in range(P.dim + 1):
        N = null_basis(B, i)
        G = relation_generators(P, V, i)
        ncols = len(monomials(P.nfacets, i))
        rg = rank(G, ncols) if G else 0
        contained = rank(N + G, ncols) == len(N) if G else True
        out.append({"degree": i, "null": len(N), "generated": rg, "contained": contained, "equal": contained and rg == len(N)})
    return out


def lefschetz_ranks(report: GradedReport, B: VolumeForm, omega: Sequence[Fraction]) -> list[dict]:
    """Rank of multiplication by omega^(n-2i) from H^i to H^(n-i), for i <= n/2.

    The pairing H^i x H^(n-i) is perfect, so the map is bijective exactly
    when the form (x, y) -> B(x omega^(n-2i) y) on H^i is nondegenerate.
    """
    n = report.n
    w = SymExpr.thickening(omega)
    out = []
    for i in range(n // 2 + 1):
        reps = report.reps[i]
        k = n - 2 * i
        wk = w**k
        M = [[B.intersection(x * wk * y) for y in reps] for x in reps]
        r = rank(M, len(reps)) if reps else 0
        out.append({"degree": i, "target": n - i, "power": k, "dim": len(reps), "rank": r, "bijective": r == len(reps) == len(report.reps[n - i])})
    return out


def strong_lefschetz_check(P: HPolytope, p=None) -> list[dict]:
    V = enumerate_vertices(P)
    report = simple_homology(P, V)
    return lefschetz_ranks(report, report.extra["form"], lefschetz_element(P, p, V))
