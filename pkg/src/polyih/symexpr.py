"""Elements of symmetric powers of the thickening space.

A degree-i expression is a homogeneous polynomial of degree i in one symbol
per facet; multiplication is the cup product ``x ⌢ y``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegreeMismatch, ParseError
from .exact import MultiPoly, format_scalar, monomials, to_scalar


@dataclass(frozen=True)
class SymExpr:
    degree: int
    poly: MultiPoly

    def __post_init__(self):
        if not self.poly.is_homogeneous(self.degree):
            raise DegreeMismatch(f"expression is not homogeneous of degree {self.degree}")

    @property
    def nfacets(self) -> int:
        return self.poly.nvars

    @classmethod
    def one(cls, f: int) -> "SymExpr":
        return cls(0, MultiPoly.constant(f, 1))

    @classmethod
    def zero(cls, f: int, degree: int) -> "SymExpr":
        return cls(degree, MultiPoly(f))

    @classmethod
    def facet(cls, f: int, i: int) -> "SymExpr":
        return cls(1, MultiPoly.variable(f, i))

    @classmethod
    def thickening(cls, tau: Sequence) -> "SymExpr":
        return cls(1, MultiPoly.linear(list(tau)))

    @classmethod
    def from_vector(cls, f: int, degree: int, vec: Sequence[Fraction], basis=None) -> "SymExpr":
        basis = basis or monomials(f, degree)
        return cls(degree, MultiPoly(f, {m: c for m, c in zip(basis, vec) if c}))

    def to_vector(self, basis=None) -> list[Fraction]:
        basis = basis or monomials(self.nfacets, self.degree)
        return [self.poly.coeff(m) for m in basis]

    def __add__(self, other: "SymExpr") -> "SymExpr":
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        return SymExpr(self.degree, self.poly + other.poly)

    def __sub__(self, other: "SymExpr") -> "SymExpr":
        return self + (-other)

    def __neg__(self) -> "SymExpr":
        return SymExpr(self.degree, -self.poly)

    def __mul__(self, other):
        if isinstance(other, SymExpr):
            return SymExpr(self.degree + other.degree, self.poly * other.poly)
        return SymExpr(self.degree, self.poly * to_scalar(other))

    def __rmul__(self, other):
        return SymExpr(self.degree, self.poly * to_scalar(other))

    def __pow__(self, k: int) -> "SymExpr":
        return SymExpr(self.degree * k, self.poly**k)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def to_str(self, names: Sequence[str]) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.poly.items():
            factors = []
            for i, k in enumerate(e):
                factors.extend([names[i]] * k)
            mono = "⌢".join(factors) if factors else "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_scalar(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_symexpr(text: str, names: Sequence[str], extra: dict[str, SymExpr] | None = None) -> SymExpr:
    """Parse ``"E*W - N*S"`` or ``"2*N⌢E⌢B"`` against facet names.

    ``extra`` maps additional symbols (e.g. ``omega``) to degree-1 expressions;
    facet names take precedence.  Names containing ``+`` or ``-`` must be
    wrapped in square brackets: ``[+-+]*[---]``.
    """
    f = len(names)
    lookup = {nm: SymExpr.facet(f, i) for i, nm in enumerate(names)}
    for k, v in (extra or {}).items():
        lookup.setdefault(k, v)
    # protect bracketed names before splitting on signs
    protected: dict[str, str] = {}

    def stash(m):
        key = f"\x00{len(protected)}\x00"
        protected[key] = m.group(1)
        return key

    body = re.sub(r"\[([^\]]+)\]", stash, text.replace("⌢", "*"))
    total: SymExpr | None = None
    pos = 0
    body = body.strip()
    if not body:
        raise ParseError("empty expression")
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m:
            raise ParseError(f"cannot parse expression {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        term: SymExpr | None = None
        coeff = Fraction(sign)
        for tok in m.group(2).split("*"):
            tok = tok.strip()
            tok = protected.get(tok, tok)
            if not tok:
                raise ParseError(f"empty factor in {text!r}")
            if tok in lookup:
                term = lookup[tok] if term is None else term * lookup[tok]
            else:
                try:
                    coeff *= to_scalar(tok)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"unknown symbol {tok!r}") from None
        term = SymExpr.one(f) if term is None else term
        term = term * coeff
        if total is None:
            total = term
        elif total.degree != term.degree:
            raise ParseError(f"mixed degrees in {text!r}")
        else:
            total = total + term
        pos = m.end()
    return total


def pairing_index(f: int, i: int, j: int):
    """Basis lists for degrees i, j, n=i+j and the index map (a, b) -> a+b."""
    bi, bj, bn = monomials(f, i), monomials(f, j), monomials(f, i + j)
    pos = {m: k for k, m in enumerate(bn)}
    table = [[pos[tuple(x + y for x, y in zip(a, b))] for b in bj] for a in bi]
    return bi, bj, bn, table
