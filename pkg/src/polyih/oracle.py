"""Combinatorial predictions: h-vectors from face counts and the toric h-recursion."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import NotEulerian
from .polytope import FaceLattice


@dataclass(frozen=True)
class HVector:
    entries: tuple[int, ...]

    @property
    def palindromic(self) -> bool:
        return self.entries == self.entries[::-1]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]


def _shifted_powers(coeffs: Sequence[int]) -> list[int]:
    """Coefficients in t of sum_j coeffs[j] * (t - 1)^j."""
    out = [0] * len(coeffs)
    for j, c in enumerate(coeffs):
        for k in range(j + 1):
            out[k] += c * comb(j, k) * (-1) ** (j - k)
    return out


def simple_h_vector(f: Sequence[int], n: int) -> HVector:
    """h-vector of a simple n-polytope from (f_0, ..., f_{n-1}).

    h(t) = sum_j f_j (t - 1)^j with f_n = 1.  A non-palindromic result means
    the input was not the f-vector of a simple polytope; check ``palindromic``.
    """
    if len(f) != n:
        raise ValueError(f"expected {n} face counts, got {len(f)}")
    h = _shifted_powers(list(f) + [1])
    return HVector(tuple(h))


def _leq(L: FaceLattice, a: int, b: int) -> bool:
    return L.faces[a].vertices <= L.faces[b].vertices


def _eulerian_ok(L: FaceLattice) -> bool:
    """Every nontrivial interval has as many even-rank as odd-rank elements."""
    m = len(L.faces)
    up = [0] * m
    down = [0] * m
    even = 0
    for a in range(m):
        if L.faces[a].dim % 2 == 0:
            even |= 1 << a
        for b in range(m):
            if _leq(L, a, b):
                up[a] |= 1 << b
                down[b] |= 1 << a
    for a in range(m):
        for b in range(m):
            if a != b and up[a] >> b & 1:
                I = up[a] & down[b]
                if (I & even).bit_count() != (I & ~even).bit_count():
                    return False
    return True


def _g_from_h(h: Sequence[int]) -> list[int]:
    d = len(h) - 1
    return [h[0]] + [h[i] - h[i - 1] for i in range(1, d // 2 + 1)]


def generalized_h_vector(L: FaceLattice, dual: bool = True, check: bool = True) -> HVector:
    """Toric h-vector by the g/h recursion, on the order dual of L by default.

    Each lattice element x carries a rank; h of the interval [bottom, x] is
    the sum over x' < x of g(x') (t - 1)^(rank x - rank x' - 1), and g is
    the truncated difference of h.
    """
    if check and not _eulerian_ok(L):
        raise NotEulerian("face lattice is not Eulerian")
    m = len(L.faces)
    if dual:
        rank = [L.dim - 1 - F.dim for F in L.faces]
        below = [[b for b in range(m) if b != a and _leq(L, a, b)] for a in range(m)]
    else:
        rank = [F.dim for F in L.faces]
        below = [[b for b in range(m) if b != a and _leq(L, b, a)] for a in range(m)]

    @lru_cache(maxsize=None)
    def h(x: int) -> tuple[int, ...]:
        if not below[x]:
            return (1,)
        d = rank[x]
        acc = [0] * (d + 1)
        for y in below[x]:
            g = _g_from_h(h(y))
            e = d - 1 - rank[y]
            # g(t) * (t - 1)^e
            for k in range(e + 1):
                c = comb(e, k) * (-1) ** (e - k)
                for j, gj in enumerate(g):
                    acc[k + j] += c * gj
        return tuple(acc)

    top = max(range(m), key=lambda x: rank[x])
    return HVector(h(top))


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci_expected(n: int) -> tuple[int, int]:
    """(strings, groups) = (F_{n+1}, F_{n+2}) with F_1 = F_2 = 1."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return fibonacci(n + 1), fibonacci(n + 2)
