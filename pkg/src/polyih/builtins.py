"""Built-in polytopes addressed by small spec strings such as ``pyr(pyr-square)``."""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product as iproduct

from .errors import DimensionTooLarge, ParseError, UnknownBuiltin
from .exact import ZERO
from .polytope import HPolytope, enumerate_vertices, parse_validate

MAX_DIM = 6
_AXES = "xyzuvw"

F = Fraction


def _axis(i: int) -> str:
    return _AXES[i] if i < len(_AXES) else f"x{i}"


def cube(n: int) -> list:
    rows = []
    for i in range(n):
        e = [F(0)] * n
        e[i] = F(1)
        rows.append((f"{_axis(i)}0", e, F(0)))
        rows.append((f"{_axis(i)}1", [-x for x in e], F(1)))
    return rows


def simplex(n: int) -> list:
    rows = []
    for i in range(n):
        e = [F(0)] * n
        e[i] = F(1)
        rows.append((f"s{i}", e, F(0)))
    rows.append((f"s{n}", [F(-1)] * n, F(1)))
    return rows


def cross(n: int) -> list:
    rows = []
    for signs in iproduct("+-", repeat=n):
        a = [F(-1) if s == "+" else F(1) for s in signs]
        rows.append(("".join(signs), a, F(1)))
    return rows


def pyr_square() -> list:
    """Square pyramid with apex (0,0,1); the base row is 2z so N-S, E-W, N+E-B are translations."""
    return [
        ("N", [F(0), F(-1), F(-1)], F(1)),
        ("S", [F(0), F(1), F(-1)], F(1)),
        ("E", [F(-1), F(0), F(-1)], F(1)),
        ("W", [F(1), F(0), F(-1)], F(1)),
        ("B", [F(0), F(0), F(2)], F(0)),
    ]


def _fresh(name: str, taken) -> str:
    if name not in taken:
        return name
    k = 2
    while f"{name}{k}" in taken:
        k += 1
    return f"{name}{k}"


def pyramid(base: HPolytope) -> list:
    # recentre the base on its vertex centroid so every offset is positive
    c = enumerate_vertices(base).centroid()
    rows = []
    for nm, a, b in zip(base.names, base.A, base.b):
        off = sum((x * y for x, y in zip(a, c)), ZERO) + b
        rows.append((nm, list(a) + [-off], off))
    rows.append((_fresh("B", base.names), [F(0)] * base.dim + [F(1)], F(0)))
    return rows


def prism(base: HPolytope) -> list:
    rows = [(nm, list(a) + [F(0)], b) for nm, a, b in zip(base.names, base.A, base.b)]
    bot = _fresh("bot", base.names)
    top = _fresh("top", set(base.names) | {bot})
    rows.append((bot, [F(0)] * base.dim + [F(1)], F(0)))
    rows.append((top, [F(0)] * base.dim + [F(-1)], F(1)))
    return rows


def product(P: HPolytope, Q: HPolytope) -> list:
    clash = set(P.names) & set(Q.names)
    pn = [f"1.{x}" if clash else x for x in P.names]
    qn = [f"2.{x}" if clash else x for x in Q.names]
    rows = [(nm, list(a) + [F(0)] * Q.dim, b) for nm, a, b in zip(pn, P.A, P.b)]
    rows += [(nm, [F(0)] * P.dim + list(a), b) for nm, a, b in zip(qn, Q.A, Q.b)]
    return rows


# ---------------------------------------------------------------------------
# spec-string parsing

_TOKEN = re.compile(r"\s*([A-Za-z][A-Za-z0-9_\-]*|\d+|[(),])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse builtin spec {text!r} at position {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of builtin spec")
    tok = tokens[pos]
    if tok.isdigit():
        return int(tok), pos + 1
    if tok in "(),":
        raise ParseError(f"unexpected {tok!r} in builtin spec")
    pos += 1
    args = []
    if pos < len(tokens) and tokens[pos] == "(":
        pos += 1
        while True:
            arg, pos = _parse(tokens, pos)
            args.append(arg)
            if pos >= len(tokens):
                raise ParseError("unbalanced parentheses in builtin spec")
            if tokens[pos] == ")":
                pos += 1
                break
            if tokens[pos] != ",":
                raise ParseError(f"expected ',' or ')' but found {tokens[pos]!r}")
            pos += 1
    return (tok, args), pos


_ALIASES = {"octahedron": ("cross", [3]), "cube": ("cube", [3]), "prism": ("prism", [("simplex", [2])])}


def _build(node, max_dim: int) -> HPolytope:
    if isinstance(node, int):
        raise ParseError(f"expected a polytope, found the number {node}")
    name, args = node
    if not args and name in _ALIASES:
        name, args = _ALIASES[name]
    if name in ("cube", "simplex", "cross"):
        if len(args) != 1 or not isinstance(args[0], int):
            raise ParseError(f"{name} takes one integer dimension")
        n = args[0]
        if n < 1:
            raise ParseError("dimension must be positive")
        if n > max_dim:
            raise DimensionTooLarge(f"{name}({n}) exceeds the dimension guard {max_dim}")
        rows = {"cube": cube, "simplex": simplex, "cross": cross}[name](n)
    elif name == "pyr-square" and not args:
        rows = pyr_square()
    elif name in ("pyr", "prism"):
        if len(args) != 1:
            raise ParseError(f"{name} takes one polytope argument")
        base = _build(args[0], max_dim)
        if base.dim + 1 > max_dim:
            raise DimensionTooLarge(f"{name} of a {base.dim}-polytope exceeds the dimension guard {max_dim}")
        rows = pyramid(base) if name == "pyr" else prism(base)
    elif name == "product":
        if len(args) != 2:
            raise ParseError("product takes two polytope arguments")
        P, Q = _build(args[0], max_dim), _build(args[1], max_dim)
        if P.dim + Q.dim > max_dim:
            raise DimensionTooLarge(f"product dimension {P.dim + Q.dim} exceeds the dimension guard {max_dim}")
        rows = product(P, Q)
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r}")
    return parse_validate(rows, label=_unparse(node))


def _unparse(node) -> str:
    if isinstance(node, int):
        return str(node)
    name, args = node
    return name if not args else f"{name}({','.join(_unparse(a) for a in args)})"


def builtin_polytope(spec: str, max_dim: int = MAX_DIM) -> HPolytope:
    """Resolve a builtin name (``cube(3)``, ``pyr(pyr-square)``, ...) to a validated polytope."""
    tokens = _tokenize(spec)
    node, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing input in builtin spec {spec!r}")
    return _build(node, max_dim)
