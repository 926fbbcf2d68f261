"""Resolution-independent (uniform) expressions and intersection homology.

Every space U^i is cut out by linear constraints ``(B_r - B_0)(xi . w) = 0``
over the enumerated family; more resolutions only add constraints, so a
missing resolution can only make U^i, and the reported dimensions, larger.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ClosureViolation, DegreeMismatch, InputError
from .exact import independent_rows, matvec, monomials, rank_nullspace, to_scalar
from .homology import GradedReport, bilinear, graded_quotient, lefschetz_ranks, moment_matrix
from .polytope import HPolytope
from .resolution import Resolution, ResolutionConfig, ResolutionSet, enumerate_resolutions, sample_resolutions
from .symexpr import SymExpr
from .volume import VolumeForm, lefschetz_element, resolution_form

Vector = list[Fraction]


@dataclass
class UniformSpace:
    degree: int
    basis: list[Vector]  # coefficient vectors over monomials(f, degree)
    constraints: list[dict] = field(default_factory=list)

    def __len__(self):
        return len(self.basis)

    def exprs(self, f: int) -> list[SymExpr]:
        mono = monomials(f, self.degree)
        return [SymExpr.from_vector(f, self.degree, v, mono) for v in self.basis]


@dataclass
class Witness:
    first: str
    second: str
    against: str
    values: tuple[Fraction, Fraction]


@dataclass
class UniformityResult:
    uniform: bool
    witness: Witness | None = None
    value: Fraction | None = None

    def __bool__(self):
        return self.uniform


class FormFamily:
    """Top forms of all enumerated resolutions of one polytope."""

    def __init__(self, resolutions: ResolutionSet, omega: Sequence[Fraction] | None = None,
                 holdout: Sequence[Resolution] = (), calibration: Fraction = Fraction(1)):
        if not len(resolutions):
            raise InputError("no resolutions were found")
        self.base: HPolytope = resolutions.base
        self.resolutions = resolutions
        self.forms: list[VolumeForm] = [resolution_form(r) for r in resolutions]
        self.labels = [r.label for r in resolutions]
        self.holdout = list(holdout)
        self.holdout_forms = [resolution_form(r) for r in self.holdout]
        self.n, self.f = self.base.dim, self.base.nfacets
        self.omega = tuple(omega) if omega is not None else lefschetz_element(self.base, V=resolutions[0].base_vertices)
        self.calibration = to_scalar(calibration)
        self._moments: dict[tuple[int, int], Sequence] = {}
        self._spaces: dict[int, UniformSpace] = {}

    def __len__(self):
        return len(self.forms)

    def calibrate(self, names: Sequence[str]) -> Fraction:
        """Rescale so that the product of the named facets evaluates to 1 on the first form."""
        if len(names) != self.n:
            raise InputError(f"calibration needs {self.n} facet names, got {len(names)}")
        x = SymExpr.one(self.f)
        for nm in names:
            try:
                x = x * SymExpr.facet(self.f, self.base.index(nm))
            except KeyError as exc:
                raise InputError(str(exc)) from None
        raw = self.forms[0].intersection(x)
        if raw == 0:
            raise InputError(f"cannot calibrate on {'⌢'.join(names)}: it evaluates to 0")
        self.calibration = 1 / raw
        return self.calibration

    def value(self, k: int, x: SymExpr, holdout: bool = False) -> Fraction:
        B = (self.holdout_forms if holdout else self.forms)[k]
        return B.intersection(x) * self.calibration

    def moments(self, k: int, i: int, holdout: bool = False):
        key = (k if not holdout else -1 - k, i)
        if key not in self._moments:
            B = (self.holdout_forms if holdout else self.forms)[k]
            self._moments[key] = moment_matrix(B, i)
        return self._moments[key]

    def omega_power(self, k: int) -> SymExpr:
        return SymExpr.thickening(self.omega) ** k

    # -- uniform spaces ----------------------------------------------------

    def _partners(self, i: int) -> tuple[list[Vector], list[str], int]:
        """Vectors in Sym^(n-i) against which degree-i elements must be uniform."""
        n, f = self.n, self.f
        if i <= n // 2:
            k = n - 2 * i + 1
            prev = self.space(i - 1)
            wk = self.omega_power(k)
            mono = monomials(f, n - i)
            vecs = [(wk * x).to_vector(mono) for x in prev.exprs(f)]
            tags = [f"omega^{k}*U{i - 1}[{j}]" for j in range(len(prev))]
            return vecs, tags, k
        prev = self.space(n - i)
        return prev.basis, [f"U{n - i}[{j}]" for j in range(len(prev))], 0

    def space(self, i: int) -> UniformSpace:
        if i < 0 or i > self.n:
            raise DegreeMismatch(f"degree {i} outside 0..{self.n}")
        if i in self._spaces:
            return self._spaces[i]
        size = len(monomials(self.f, i))
        if i <= 1:
            basis = [[Fraction(int(a == b)) for b in range(size)] for a in range(size)]
            sp = UniformSpace(i, basis)
        else:
            vecs, tags, _ = self._partners(i)
            rows, rec = [], []
            for r in range(1, len(self.forms)):
                D = _difference(self.moments(r, i), self.moments(0, i))
                for w, tag in zip(vecs, tags):
                    rows.append(matvec(D, w))
                    rec.append({"pair": (self.labels[r], self.labels[0]), "against": tag})
            keep = independent_rows(rows, size) if rows else []
            _, basis = rank_nullspace([rows[k] for k in keep], size)
            sp = UniformSpace(i, basis, [rec[k] for k in keep])
        self._spaces[i] = sp
        return sp

    def spaces(self) -> list[UniformSpace]:
        return [self.space(i) for i in range(self.n + 1)]


def _difference(P: list[list[Fraction]], Q: list[list[Fraction]]) -> list[list[Fraction]]:
    return [[a - b for a, b in zip(p, q)] for p, q in zip(P, Q)]


def resolution_forms(P: HPolytope, cfg: ResolutionConfig = ResolutionConfig(), holdout: int = 0,
                     holdout_seed: int | None = None, omega=None) -> FormFamily:
    rs = enumerate_resolutions(P, cfg)
    held: list[Resolution] = []
    if holdout:
        seed = holdout_seed if holdout_seed is not None else cfg.seed + 1
        held, _ = sample_resolutions(P, holdout, seed, cfg, rs[0].base_vertices, max_draws=4 * holdout)
    return FormFamily(rs, omega=omega, holdout=held)


def uniform_space(F: FormFamily, i: int) -> UniformSpace:
    return F.space(i)


def _all_forms(F: FormFamily):
    yield from ((F.labels[k], k, False) for k in range(len(F.forms)))
    yield from ((F.holdout[k].provenance, k, True) for k in range(len(F.holdout_forms)))


def uniformity_test(F: FormFamily, x: SymExpr, mode: str = "vs-space", include_holdout: bool = True) -> UniformityResult:
    """Check that x pairs identically under every form.

    ``full-degree`` evaluates a degree-n expression directly; ``vs-space``
    pairs a degree-i expression against every basis element of U^(n-i).
    """
    n, f = F.n, F.f
    if mode == "full-degree":
        if x.degree != n:
            raise DegreeMismatch(f"full-degree mode needs degree {n}, got {x.degree}")
        partners = [("1", SymExpr.one(f))]
    elif mode == "vs-space":
        if not 0 <= x.degree <= n:
            raise DegreeMismatch(f"degree {x.degree} outside 0..{n}")
        partners = [(y.to_str(F.base.names), y) for y in F.space(n - x.degree).exprs(f)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    forms = [t for t in _all_forms(F) if include_holdout or not t[2]]
    value = None
    for tag, y in partners:
        xy = x * y
        ref = F.value(0, xy)
        value = ref if value is None else value
        for label, k, hold in forms:
            v = F.value(k, xy, hold)
            if v != ref:
                return UniformityResult(False, Witness(F.labels[0], label, tag, (ref, v)))
    return UniformityResult(True, value=value)


def _pairing_matrices(F: FormFamily, i: int, k: int, holdout: bool = False) -> list[list[list[Fraction]]]:
    """Per-form matrices of B_r(xi . eta), eta in U^(n-i); with k > 0, of B_r(xi . omega^k . eta), eta in U^i."""
    f, n = F.f, F.n
    U = F.space(i).basis
    if k:
        wk = F.omega_power(k)
        mono = monomials(f, n - i)
        W = [(wk * y).to_vector(mono) for y in F.space(i).exprs(f)]
    else:
        W = F.space(n - i).basis
    count = len(F.holdout_forms) if holdout else len(F.forms)
    return [bilinear(U, F.moments(r, i, holdout), W) for r in range(count)]


def closure_check(F: FormFamily) -> list[dict]:
    """Uniformity of B_r(xi . omega^(n-2i) . eta) for xi, eta in U^i, i <= n/2."""
    out = []
    for i in range(F.n // 2 + 1):
        mats = _pairing_matrices(F, i, F.n - 2 * i)
        entry = {"degree": i, "power": F.n - 2 * i, "pass": True, "witness": None}
        for r in range(1, len(mats)):
            diff = _first_diff(mats[0], mats[r])
            if diff:
                a, b = diff
                entry.update({"pass": False, "witness": {
                    "forms": (F.labels[0], F.labels[r]), "xi": a, "eta": b,
                    "values": (mats[0][a][b] * F.calibration, mats[r][a][b] * F.calibration)}})
                break
        out.append(entry)
    return out


def _first_diff(M, N):
    for a, (x, y) in enumerate(zip(M, N)):
        for b, (p, q) in enumerate(zip(x, y)):
            if p != q:
                return a, b
    return None


def holdout_check(F: FormFamily) -> list[dict]:
    """Every U^i basis element must satisfy its defining equations on held-out forms too."""
    out = []
    n = F.n
    for i in range(n + 1):
        U = F.space(i).basis
        partners = [(0, F.space(n - i).basis)]
        if 2 <= i <= n // 2:
            vecs, _, k = F._partners(i)
            partners.append((k, vecs))
        ok, witness = True, None
        for k, W in partners:
            base = bilinear(U, F.moments(0, i), W)
            for h in range(len(F.holdout_forms)):
                diff = _first_diff(base, bilinear(U, F.moments(h, i, True), W))
                if diff:
                    ok, witness = False, {"holdout": F.holdout[h].provenance, "power": k, "index": diff}
                    break
            if not ok:
                break
        out.append({"degree": i, "basis": len(U), "holdout_forms": len(F.holdout_forms), "pass": ok, "witness": witness})
    return out


def ih_betti(F: FormFamily) -> GradedReport:
    """Quotient U^i x U^(n-i) by the kernels of the common pairing."""
    n, f = F.n, F.f
    spaces = F.spaces()
    mats = {}
    for i in range(n + 1):
        per_form = _pairing_matrices(F, i, 0)
        for r in range(1, len(per_form)):
            diff = _first_diff(per_form[0], per_form[r])
            if diff:
                raise ClosureViolation(
                    f"U^{i} x U^{n - i} pairing differs between {F.labels[0]} and {F.labels[r]} at {diff}"
                )
        mats[i] = per_form[0]
    report = graded_quotient(n, f, [sp.basis for sp in spaces], lambda i: mats[i])
    report.extra["spaces"] = [len(sp) for sp in spaces]
    return report


def ih_lefschetz(F: FormFamily, report: GradedReport) -> list[dict]:
    return lefschetz_ranks(report, F.forms[0], F.omega)
