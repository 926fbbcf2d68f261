"""Compact local-global cycles: difference functionals of pairs of resolutions.

For resolutions r, s and a degree n-1 expression eta, the functional
``gamma -> (B_r - B_s)(eta . gamma)`` on T^1 is supported near the locus
where r and s differ.  Only pairs differing over a single vertex are used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import ZERO, independent_rows, monomials, rank
from .oracle import fibonacci_expected
from .resolution import diff_locus
from .symexpr import SymExpr
from .uniform import FormFamily
from .volume import locally_trivial_space


@dataclass
class LGFunctional:
    pair: tuple[int, int]  # indices into the family
    labels: tuple[str, str]
    eta: SymExpr
    values: tuple[Fraction, ...]  # on the facet basis of T^1

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass
class VertexCycles:
    vertex: int
    point: tuple[Fraction, ...]
    facets: tuple[str, ...]
    pairs: list[tuple[int, int]]
    functionals: list[LGFunctional]
    rank: int
    generator: LGFunctional | None = None


@dataclass
class LGReport:
    vertices: list[VertexCycles]
    global_rank: int
    span_rank: int
    relations: int
    fibonacci: dict = field(default_factory=dict)

    @property
    def cycles(self) -> int:
        return sum(1 for v in self.vertices if v.generator is not None)


def eta_sources(F: FormFamily) -> list[SymExpr]:
    """Degree n-1 expressions paired against gamma.

    n = 3 uses Sym^2; n = 4 uses Sym^2 . S^1 and Sym^3; otherwise Sym^(n-1).
    """
    f, n = F.f, F.n
    if n == 4:
        S1 = [SymExpr.thickening(v) for v in locally_trivial_space(F.base, F.resolutions[0].base_vertices)]
        sym2 = [SymExpr.from_vector(f, 2, [1], [m]) for m in monomials(f, 2)]
        out = [a * s for a in sym2 for s in S1]
        out += [SymExpr.from_vector(f, 3, [1], [m]) for m in monomials(f, 3)]
        return out
    return [SymExpr.from_vector(f, n - 1, [1], [m]) for m in monomials(f, n - 1)]


def functional(F: FormFamily, r: int, s: int, eta: SymExpr) -> LGFunctional:
    vals = []
    for k in range(F.f):
        x = eta * SymExpr.facet(F.f, k)
        vals.append(F.value(r, x) - F.value(s, x))
    return LGFunctional((r, s), (F.labels[r], F.labels[s]), eta, tuple(vals))


def single_vertex_pairs(F: FormFamily) -> dict[int, list[tuple[int, int]]]:
    out: dict[int, list[tuple[int, int]]] = {}
    res = F.resolutions.resolutions
    for r, s in combinations(range(len(res)), 2):
        locus = diff_locus(res[r], res[s])
        if len(locus) == 1 and len(locus[0]) == 1:
            (v,) = locus[0]
            out.setdefault(v, []).append((r, s))
    return out


def vertex_local_cycles(F: FormFamily, v: int, etas: list[SymExpr] | None = None,
                        pairs: list[tuple[int, int]] | None = None) -> VertexCycles:
    PV = F.resolutions[0].base_vertices
    if pairs is None:
        pairs = single_vertex_pairs(F).get(v, [])
    etas = eta_sources(F) if etas is None else etas
    funcs = []
    for r, s in pairs:
        for eta in etas:
            phi = functional(F, r, s, eta)
            if not phi.is_zero():
                funcs.append(phi)
    rk = rank([list(phi.values) for phi in funcs], F.f) if funcs else 0
    names = tuple(F.base.names[i] for i in sorted(PV.incidence[v]))
    return VertexCycles(v, PV.points[v], names, list(pairs), funcs, rk, funcs[0] if funcs else None)


def compact_lg_report(F: FormFamily) -> LGReport:
    PV = F.resolutions[0].base_vertices
    pairs = single_vertex_pairs(F)
    etas = eta_sources(F)
    verts = []
    for v in range(len(PV)):
        if len(PV.incidence[v]) == F.n:
            continue
        verts.append(vertex_local_cycles(F, v, etas, pairs.get(v, [])))
    gens = [list(vc.generator.values) for vc in verts if vc.generator is not None]
    every = [list(phi.values) for vc in verts for phi in vc.functionals]
    global_rank = len(independent_rows(gens, F.f)) if gens else 0
    span_rank = rank(every, F.f) if every else 0
    strings, groups = fibonacci_expected(F.n)
    return LGReport(verts, global_rank, span_rank, len(gens) - global_rank,
                    {"strings": strings, "groups": groups})


def annihilates(phi: LGFunctional, tau) -> bool:
    return sum((a * b for a, b in zip(phi.values, tau)), ZERO) == 0
