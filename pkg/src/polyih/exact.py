"""Exact rational scalars, dense linear algebra and sparse multivariate polynomials.

Scalars are :class:`fractions.Fraction`; a matrix is a list of rows.  Nothing in
this module ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterable, Mapping, Sequence

Scalar = Fraction
Vector = list
Matrix = list

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_scalar(x) for x in row] for row in rows]


def rref(M: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are taken on the first nonzero entry in column order.  Returns
    ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    rows = [list(r) for r in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        for k in range(r, len(rows)):
            if rows[k][c] != 0:
                break
        else:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for k in range(len(rows)):
            if k != r:
                fac = rows[k][c]
                if fac != 0:
                    row = rows[k]
                    for j in nz:
                        row[j] -= fac * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(M: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    return len(rref(M, ncols)[1])


def rank_nullspace(M: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Rank and a canonical nullspace basis of ``M``.

    The basis has one vector per free column: a 1 in that column, 0 in every
    other free column.  Pass ``ncols`` when ``M`` may have no rows.
    """
    if ncols is None:
        ncols = len(M[0]) if len(M) else 0
    R, pivots = rref(M, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, p in zip(R, pivots):
            v[p] = -row[free]
        basis.append(v)
    return len(pivots), basis


def independent_rows(vectors: Sequence[Sequence[Fraction]], ncols: int) -> list[int]:
    """Indices of the earliest linearly independent subset of ``vectors``."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, v in enumerate(vectors):
        w = list(v)
        for row, p in zip(basis, pivots):
            if w[p] != 0:
                fac = w[p]
                w = [a - fac * b for a, b in zip(w, row)]
        p = next((j for j in range(ncols) if w[j] != 0), None)
        if p is None:
            continue
        piv = w[p]
        w = [a / piv for a in w]
        # keep the basis reduced in the new pivot column
        for k, row in enumerate(basis):
            if row[p] != 0:
                fac = row[p]
                basis[k] = [a - fac * b for a, b in zip(row, w)]
        basis.append(w)
        pivots.append(p)
        chosen.append(idx)
    return chosen


def transpose(M: Sequence[Sequence[Fraction]], nrows_if_empty: int = 0) -> Matrix:
    if not M:
        return [[] for _ in range(nrows_if_empty)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col)), ZERO) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    return [sum((a * b for a, b in zip(row, x)), ZERO) for row in A]


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), ZERO)


def det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(M)
    rows = [list(r) for r in M]
    result = ONE
    for c in range(n):
        k = next((k for k in range(c, n) if rows[k][c] != 0), None)
        if k is None:
            return ZERO
        if k != c:
            rows[c], rows[k] = rows[k], rows[c]
            result = -result
        piv = rows[c][c]
        result *= piv
        for k in range(c + 1, n):
            fac = rows[k][c] / piv
            if fac != 0:
                rows[k] = [a - fac * b for a, b in zip(rows[k], rows[c])]
    return result


def inverse(M: Sequence[Sequence[Fraction]]) -> Matrix | None:
    """Inverse of a square matrix, or None when singular."""
    n = len(M)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        return None
    return [row[n:] for row in R[:n]]


def solve(M: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """One solution of ``M x = rhs`` (free variables zero), or None."""
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [to_scalar(b)] for row, b in zip(M, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


# ---------------------------------------------------------------------------
# polynomials


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables over the rationals.

    Immutable by convention.  Terms with a zero coefficient are never stored.
    Iteration and serialization use graded-lex order: lower total degree
    first, and within a degree the first variable counts as largest.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not have {nvars} entries")
                c = to_scalar(c)
                if c != 0:
                    clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int, coeff=1) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence[Fraction], const=0) -> "MultiPoly":
        nvars = len(coeffs)
        terms = {(0,) * nvars: to_scalar(const)}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * nvars
                e[i] = 1
                terms[tuple(e)] = to_scalar(c)
        return cls(nvars, terms)

    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = to_scalar(other)
            return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def items(self):
        """Terms in canonical graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def coeff(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), ZERO)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def eval_at(self, point: Sequence) -> Fraction:
        point = [to_scalar(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Compose with polynomial images of each variable."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars if images else 0
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        result = MultiPoly(target)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def scale_variables(self, factors: Sequence[Fraction]) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            for x, k in zip(factors, e):
                if k:
                    c = c * to_scalar(x) ** k
            out[e] = c
        return MultiPoly(self.nvars, out)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"e{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.items():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(format_scalar(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_scalar(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_str()})"


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total ``degree``, in canonical graded-lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=_grlex_key)
    return out


def multinomial_weight(exps: Sequence[int]) -> int:
    """prod(m_j!) for a multiplicity vector."""
    w = 1
    for k in exps:
        w *= factorial(k)
    return w


def poly_ops(p: MultiPoly, q: MultiPoly | None, request: str, arg=None):
    """Dispatch ``add``, ``mul``, ``eval_at`` or ``homogeneous_part``."""
    if request == "add":
        return p + q
    if request == "mul":
        return p * q
    if request == "eval_at":
        return p.eval_at(arg)
    if request == "homogeneous_part":
        return p.homogeneous_part(arg)
    raise ValueError(f"unknown polynomial request {request!r}")
