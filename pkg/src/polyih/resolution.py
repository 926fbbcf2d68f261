"""Facet displacement and enumeration of simple resolutions.

A resolution is a small displacement ``alpha_i v >= eps_i`` of every facet
that makes the polytope simple without losing a facet.  Types are tracked by
:class:`~polyih.polytope.Fingerprint`; two displacements realizing the same
fingerprint are the same resolution.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Any, Sequence

from .errors import BaseMismatch, Empty, FacetLost, NotStabilized, OrderingGuard
from .exact import format_scalar, to_scalar
from .polytope import (
    Fingerprint,
    HPolytope,
    VertexData,
    affine_dimension,
    enumerate_vertices,
    face_of,
    fingerprint,
)

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The 64-bit split-mix generator; bit-identical on every platform."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return self.next() % k

    def permutation(self, n: int) -> tuple[int, ...]:
        items = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return tuple(items)


@dataclass
class Resolution:
    base: HPolytope
    base_vertices: VertexData
    eps: tuple[Fraction, ...]
    polytope: HPolytope
    vertices: VertexData
    fingerprint: Fingerprint
    vertex_map: tuple[frozenset[int], ...]
    provenance: str
    form: Any = None

    @property
    def label(self) -> str:
        return resolution_label(self)

    def summary(self) -> dict:
        return {
            "label": self.label,
            "digest": self.fingerprint.digest(),
            "vertices": len(self.vertices),
            "eps": [format_scalar(x) for x in self.eps],
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class ResolutionConfig:
    max_orderings: int = 5040
    sample_count: int = 256
    seed: int = 20240613
    scale: Fraction = Fraction(1, 8)
    K: int = 1000
    retries: int = 12


@dataclass
class ResolutionSet:
    base: HPolytope
    resolutions: list[Resolution]
    ordering_types: frozenset[Fingerprint] = frozenset()
    sampling_types: frozenset[Fingerprint] = frozenset()
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.resolutions)

    def __iter__(self):
        return iter(self.resolutions)

    def __getitem__(self, k):
        return self.resolutions[k]

    @property
    def passes_agree(self) -> bool | None:
        if not self.ordering_types or not self.sampling_types:
            return None
        return self.ordering_types == self.sampling_types

    def by_label(self, label: str) -> Resolution:
        for r in self.resolutions:
            if r.label == label:
                return r
        raise KeyError(label)


def displace(P: HPolytope, eps: Sequence) -> HPolytope:
    """The polytope ``alpha_i v >= eps_i``; raises if it degenerates."""
    eps = [to_scalar(e) for e in eps]
    if len(eps) != P.nfacets:
        raise ValueError(f"displacement has {len(eps)} entries, expected {P.nfacets}")
    Q = P.with_offsets([b - e for b, e in zip(P.b, eps)])
    _check_displaced(Q, enumerate_vertices(Q))
    return Q


def _check_displaced(Q: HPolytope, V: VertexData):
    if not V.points or affine_dimension(V.points) < Q.dim:
        raise Empty("displaced system is empty or degenerate")
    lost = []
    for i, nm in enumerate(Q.names):
        pts = [p for p, inc in zip(V.points, V.incidence) if i in inc]
        if affine_dimension(pts) < Q.dim - 1:
            lost.append(nm)
    if lost:
        raise FacetLost(lost)


def _realize(P: HPolytope, PV: VertexData, eps, provenance: str) -> Resolution | None:
    """Build a Resolution at ``eps`` or return None when it is not a valid simple type."""
    Q = P.with_offsets([b - e for b, e in zip(P.b, eps)])
    V = enumerate_vertices(Q)
    try:
        _check_displaced(Q, V)
    except (Empty, FacetLost):
        return None
    if not V.simple:
        return None
    vmap = []
    for inc in V.incidence:
        G = face_of(PV, inc)
        if not G:
            return None
        vmap.append(G)
    return Resolution(P, PV, tuple(eps), Q, V, fingerprint(V), tuple(vmap), provenance)


def resolution_at(P: HPolytope, eps: Sequence, PV: VertexData | None = None, provenance: str = "explicit") -> Resolution:
    """The resolution realized at a given displacement, without stabilization."""
    eps = [to_scalar(e) for e in eps]
    res = _realize(P, PV or enumerate_vertices(P), eps, provenance)
    if res is None:
        raise NotStabilized("displacement does not give a simple resolution over the base")
    return res


def _stabilize(P, PV, make_eps, start: Fraction, retries: int, provenance: str):
    s = start
    for _ in range(retries + 1):
        r1 = _realize(P, PV, make_eps(s), provenance)
        if r1 is not None:
            r2 = _realize(P, PV, make_eps(s / 2), provenance)
            if r2 is not None and r2.fingerprint == r1.fingerprint:
                return r1
        s /= 2
    return None


def resolve_by_ordering(
    P: HPolytope,
    order: Sequence[int],
    scale: Fraction = Fraction(1, 8),
    retries: int = 12,
    PV: VertexData | None = None,
) -> Resolution:
    """Push facets outward by ``scale**k`` in the given order (first facet furthest)."""
    scale = to_scalar(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if sorted(order) != list(range(P.nfacets)):
        raise ValueError("ordering must be a permutation of the facet indices")
    PV = PV or enumerate_vertices(P)

    def make_eps(s):
        eps = [Fraction(0)] * P.nfacets
        for k, i in enumerate(order, start=1):
            eps[i] = -(s**k)
        return eps

    prov = "ordering " + ",".join(P.names[i] for i in order)
    res = _stabilize(P, PV, make_eps, scale, retries, prov)
    if res is None:
        raise NotStabilized(f"{prov}: no stable simple type after {retries} halvings")
    return res


def sample_resolutions(P: HPolytope, count: int, seed: int, cfg: ResolutionConfig = ResolutionConfig(),
                       PV: VertexData | None = None, max_draws: int | None = None):
    """Random small displacements; returns (accepted resolutions, discarded draws).

    Each offset is drawn from {-K..-1}/D and D is doubled until the type at D
    and 2D agree.  Nothing is deduplicated here.
    """
    PV = PV or enumerate_vertices(P)
    rng = SplitMix64(seed)
    out: list[Resolution] = []
    discarded = 0
    draws = 0
    max_draws = count if max_draws is None else max_draws
    start = Fraction(1, cfg.K) * cfg.scale
    while len(out) < count and draws < max_draws:
        ks = [1 + rng.below(cfg.K) for _ in range(P.nfacets)]
        draws += 1

        def make_eps(s, ks=ks):
            return [-k * s for k in ks]

        res = _stabilize(P, PV, make_eps, start, cfg.retries, f"sample seed={seed} #{draws - 1}")
        if res is None:
            discarded += 1
        else:
            out.append(res)
    return out, discarded


def _orderings(f: int, cfg: ResolutionConfig):
    if factorial(f) <= cfg.max_orderings:
        return list(permutations(range(f))), True
    if cfg.sample_count <= 0:
        raise OrderingGuard(
            f"{f}! facet orderings exceed max_orderings={cfg.max_orderings}; enable sampling"
        )
    rng = SplitMix64(cfg.seed ^ 0x5DEECE66D)
    seen: dict[tuple[int, ...], None] = {}
    budget = 20 * cfg.max_orderings
    while len(seen) < cfg.max_orderings and budget:
        seen.setdefault(rng.permutation(f))
        budget -= 1
    return list(seen), False


def enumerate_resolutions(P: HPolytope, cfg: ResolutionConfig = ResolutionConfig()) -> ResolutionSet:
    """Union of ordering-derived and sampled resolutions, deduplicated and sorted."""
    PV = enumerate_vertices(P)
    found: dict[Fingerprint, Resolution] = {}
    ordering_types: set[Fingerprint] = set()
    orders, exhaustive = _orderings(P.nfacets, cfg)
    failed_orders = 0
    for order in orders:
        try:
            r = resolve_by_ordering(P, order, cfg.scale, cfg.retries, PV)
        except NotStabilized:
            failed_orders += 1
            continue
        ordering_types.add(r.fingerprint)
        found.setdefault(r.fingerprint, r)

    samples, discarded = sample_resolutions(P, cfg.sample_count, cfg.seed, cfg, PV)
    sampling_types = set()
    for r in samples:
        sampling_types.add(r.fingerprint)
        found.setdefault(r.fingerprint, r)

    resolutions = [found[fp] for fp in sorted(found)]
    stats = {
        "orderings_tried": len(orders),
        "orderings_exhaustive": exhaustive,
        "orderings_failed": failed_orders,
        "samples_accepted": len(samples),
        "samples_discarded": discarded,
        "ordering_types": len(ordering_types),
        "sampling_types": len(sampling_types),
    }
    log.debug("resolutions of %s: %s", P.label, stats)
    return ResolutionSet(P, resolutions, frozenset(ordering_types), frozenset(sampling_types), stats)


def _over(r: Resolution):
    groups: dict[frozenset[int], list[tuple[int, ...]]] = defaultdict(list)
    for inc, G in zip(r.vertices.incidence, r.vertex_map):
        groups[G].append(tuple(sorted(inc)))
    return {G: sorted(v) for G, v in groups.items()}


def diff_locus(r: Resolution, s: Resolution) -> list[frozenset[int]]:
    """Faces of the base (as vertex-index sets) over which r and s differ."""
    if r.base != s.base:
        raise BaseMismatch("resolutions are over different polytopes")
    a, b = _over(r), _over(s)
    faces = set(a) | set(b)
    return sorted((G for G in faces if a.get(G) != b.get(G)), key=lambda G: (len(G), sorted(G)))


def describe_face(P: HPolytope, PV: VertexData, G: frozenset[int]) -> str:
    common = frozenset.intersection(*(PV.incidence[k] for k in G)) if G else frozenset()
    return "∩".join(P.names[i] for i in sorted(common))


def resolution_label(r: Resolution) -> str:
    """``Δ_NS``-style name: over each split face, the facets that do not meet everywhere.

    For the square pyramid, squeezing E and W gives vertices NEW and SEW over
    the apex; N and S are the facets that vary, hence ``Δ_NS``.
    """
    names = r.base.names
    sep = "" if all(len(x) == 1 for x in names) else ","
    parts = []
    for G, sets in sorted(_over(r).items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        if len(sets) < 2:
            continue
        union = set().union(*sets)
        common = set.intersection(*(set(s) for s in sets))
        varying = sorted(union - common)
        parts.append(sep.join(names[i] for i in varying))
    if not parts:
        return "Δ"
    return "Δ_" + "|".join(parts)
