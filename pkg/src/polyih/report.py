"""Subcommand pipelines producing structured reports plus a text rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .errors import ClosureViolation, InputError
from .exact import format_scalar
from .homology import lefschetz_ranks, relations_generate_null, simple_homology
from .localglobal import compact_lg_report
from .oracle import fibonacci_expected, generalized_h_vector, simple_h_vector
from .polytope import HPolytope, enumerate_vertices, face_lattice
from .resolution import ResolutionConfig, describe_face, diff_locus, enumerate_resolutions
from .symexpr import SymExpr, parse_symexpr
from .uniform import (
    FormFamily,
    closure_check,
    holdout_check,
    ih_betti,
    ih_lefschetz,
    resolution_forms,
    uniformity_test,
)
from .volume import lefschetz_element, locally_trivial_space, resolution_form, top_volume_form, volume_polynomial

MAX_LISTED_PAIRS = 12


@dataclass
class Options:
    command: str
    source: str
    seed: int = 20240613
    samples: int = 256
    max_orderings: int = 5040
    holdout: int = 24
    calibrate: tuple[str, ...] | None = None
    degree: int | None = None
    expr: str | None = None
    mode: str = "vs-space"

    def config(self) -> ResolutionConfig:
        return ResolutionConfig(max_orderings=self.max_orderings, sample_count=self.samples, seed=self.seed)

    def header(self) -> dict:
        return {
            "version": __version__,
            "command": self.command,
            "input": self.source,
            "seed": self.seed,
            "samples": self.samples,
            "max_orderings": self.max_orderings,
            "holdout": self.holdout,
            "calibrate": ",".join(self.calibrate) if self.calibrate else None,
            "degree": self.degree,
        }


@dataclass
class Report:
    data: dict
    lines: list[str] = field(default_factory=list)
    exit_code: int = 0

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.data), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        h = self.data["header"]
        head = (f"polyih {h['version']}  {h['command']} {h['input']}  seed={h['seed']} "
                f"samples={h['samples']} max_orderings={h['max_orderings']} holdout={h['holdout']}")
        if h["calibrate"]:
            head += f" calibrate={h['calibrate']}"
        return "\n".join([head] + self.lines) + "\n"


def _jsonable(x: Any):
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x


def _vec(v) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v) + ")"


def _dims(d) -> str:
    return " ".join(str(x) for x in d)


def polytope_summary(P: HPolytope) -> dict:
    V = enumerate_vertices(P)
    return {"label": P.label, "dim": P.dim, "facets": P.rows(), "vertices": len(V), "simple": V.simple}


def _start(P: HPolytope, opts: Options) -> Report:
    return Report({"header": opts.header(), "polytope": polytope_summary(P)})


def _family(P: HPolytope, opts: Options, holdout: bool = False) -> FormFamily:
    F = resolution_forms(P, opts.config(), holdout=opts.holdout if holdout else 0)
    if opts.calibrate:
        F.calibrate(opts.calibrate)
    return F


def _oracle_h(P: HPolytope) -> tuple[int, ...]:
    return generalized_h_vector(face_lattice(P)).entries


# ---------------------------------------------------------------------------


def cmd_info(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    V = enumerate_vertices(P)
    L = face_lattice(P, V)
    S1 = locally_trivial_space(P, V)
    verts = [{"point": list(p), "facets": [P.names[i] for i in sorted(inc)]} for p, inc in zip(V.points, V.incidence)]
    rep.data.update({
        "f_vector": list(L.f_vector), "euler": L.euler_ok(), "vertex_list": verts,
        "nonsimple_vertices": sum(1 for inc in V.incidence if len(inc) > P.dim),
        "locally_trivial_dim": len(S1), "lefschetz_element": list(lefschetz_element(P, V=V)),
    })
    rep.lines += [
        f"dimension {P.dim}, {P.nfacets} facets: {', '.join(P.names)}",
        f"f-vector: {_dims(L.f_vector)}  (Euler relation {'holds' if L.euler_ok() else 'FAILS'})",
        f"simple: {'yes' if V.simple else 'no'} ({rep.data['nonsimple_vertices']} non-simple vertices)",
        f"locally trivial thickenings: dimension {len(S1)} of {P.nfacets}",
        f"omega at the vertex centroid: {_vec(rep.data['lefschetz_element'])}",
        "vertices:",
    ]
    rep.lines += [f"  {_vec(v['point'])}  on {'∩'.join(v['facets'])}" for v in verts]
    return rep


def cmd_volume_poly(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    eps_names = [f"e_{nm}" for nm in P.names]
    V = enumerate_vertices(P)
    entries = []
    if V.simple:
        v = volume_polynomial(P, V=V)
        entries.append({"label": "Δ", "eps": None, "polynomial": v.to_str(eps_names),
                        "top": top_volume_form(v, P.dim).top.to_str(list(P.names))})
    else:
        for r in enumerate_resolutions(P, opts.config()):
            B = resolution_form(r)
            entries.append({"label": r.label, "eps": list(r.eps), "polynomial": volume_polynomial(r).to_str(eps_names),
                            "top": B.top.to_str(list(P.names))})
    rep.data["forms"] = entries
    for e in entries:
        rep.lines.append(f"{e['label']}:")
        if e["eps"] is not None:
            rep.lines.append(f"  eps = {_vec(e['eps'])}")
        rep.lines.append(f"  vol(eps) = {e['polynomial']}")
        rep.lines.append(f"  top(tau) = {e['top']}")
    return rep


def cmd_resolutions(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    rs = enumerate_resolutions(P, opts.config())
    PV = rs[0].base_vertices if len(rs) else enumerate_vertices(P)
    loci: set[frozenset[int]] = set()
    pairs = []
    for a in range(len(rs)):
        for b in range(a + 1, len(rs)):
            locus = diff_locus(rs[a], rs[b])
            loci.update(locus)
            if len(rs) <= MAX_LISTED_PAIRS:
                pairs.append({"pair": [rs[a].label, rs[b].label], "differ_over": [describe_face(P, PV, G) for G in locus]})
    where = sorted({describe_face(P, PV, G) for G in loci})
    rep.data.update({
        "types": [r.summary() for r in rs], "stats": rs.stats, "passes_agree": rs.passes_agree,
        "differ_over": where, "pairs": pairs,
    })
    labels = ", ".join(r.label for r in rs)
    tail = f" (differ over {'; '.join(where)})" if where else ""
    rep.lines.append(f"{len(rs)} type{'s' if len(rs) != 1 else ''}: {labels}{tail}")
    st = rs.stats
    rep.lines.append(
        f"orderings: {st['orderings_tried']} tried ({'all' if st['orderings_exhaustive'] else 'sampled'}), "
        f"{st['ordering_types']} types; samples: {st['samples_accepted']} accepted, "
        f"{st['samples_discarded']} discarded, {st['sampling_types']} types; passes agree: {rs.passes_agree}"
    )
    for r in rs:
        rep.lines.append(f"  {r.label}  [{r.fingerprint.digest()}]  {len(r.vertices)} vertices  eps={_vec(r.eps)}")
    for p in pairs:
        rep.lines.append(f"  {p['pair'][0]} vs {p['pair'][1]}: differ over {'; '.join(p['differ_over'])}")
    return rep


def _lefschetz_lines(rows) -> list[str]:
    return [f"  omega^{x['power']}: H^{x['degree']} -> H^{x['target']}  rank {x['rank']} of {x['dim']}"
            f"  {'bijective' if x['bijective'] else 'NOT bijective'}" for x in rows]


def cmd_betti(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    V = enumerate_vertices(P)
    H = simple_homology(P, V)
    B = H.extra["form"]
    oracle = _oracle_h(P)
    lef = lefschetz_ranks(H, B, lefschetz_element(P, V=V))
    gen = relations_generate_null(P, B, V)
    agree = H.dims == oracle
    rep.data.update({"homology": H.to_json(P.names), "oracle": list(oracle), "agree": agree,
                     "lefschetz": lef, "relations": gen})
    rep.lines += [
        f"betti: {_dims(H.dims)}",
        f"oracle (toric h of the dual lattice): {_dims(oracle)}  {'agree' if agree else 'MISMATCH'}",
        "strong Lefschetz:",
    ] + _lefschetz_lines(lef)
    rep.lines.append("null spaces generated by translations and empty intersections: "
                     + " ".join("yes" if g["equal"] else "no" for g in gen))
    for i, reps in enumerate(H.reps):
        rep.lines.append(f"  H^{i} representatives: {', '.join(x.to_str(P.names) for x in reps)}")
    if not agree or not all(x["bijective"] for x in lef):
        rep.exit_code = 1
    return rep


def cmd_ih_betti(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    F = _family(P, opts, holdout=True)
    oracle = _oracle_h(P)
    closure = closure_check(F)
    rep.data.update({"types": F.labels, "oracle": list(oracle), "closure": closure})
    try:
        H = ih_betti(F)
    except ClosureViolation as exc:
        rep.data["finding"] = str(exc)
        rep.lines += [f"closure violation: {exc}"]
        rep.exit_code = 1
        return rep
    lef = ih_lefschetz(F, H)
    hold = holdout_check(F)
    agree = H.dims == oracle
    rep.data.update({
        "homology": H.to_json(P.names), "uniform_dims": H.extra["spaces"], "agree": agree,
        "lefschetz": lef, "holdout": hold,
        "monotonicity": "constraints only shrink U^i, so missing resolutions can only enlarge these dimensions",
    })
    rep.lines += [
        f"{len(F)} resolution types; uniform space dims: {_dims(H.extra['spaces'])}",
        f"ih-betti: {_dims(H.dims)}",
        f"oracle (toric h of the dual lattice): {_dims(oracle)}  {'agree' if agree else 'MISMATCH'}",
        "closure: " + " ".join(f"{c['degree']}:{'pass' if c['pass'] else 'FAIL'}" for c in closure),
        f"hold-out ({len(F.holdout)} fresh samples): " + " ".join(f"U^{h['degree']}:{'pass' if h['pass'] else 'FAIL'}" for h in hold),
        "strong Lefschetz:",
    ] + _lefschetz_lines(lef)
    for i, reps in enumerate(H.reps):
        rep.lines.append(f"  H^{i} representatives: {', '.join(x.to_str(P.names) for x in reps)}")
    if enumerate_vertices(P).simple:
        simple = simple_homology(P).dims
        rep.data["simple_betti"] = list(simple)
        agree = agree and simple == H.dims
    ok = agree and all(x["bijective"] for x in lef) and all(c["pass"] for c in closure) and all(h["pass"] for h in hold)
    if not ok:
        rep.exit_code = 1
    return rep


def cmd_uniform(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    F = _family(P, opts)
    degrees = range(P.dim + 1) if opts.degree is None else [opts.degree]
    if opts.degree is not None and not 0 <= opts.degree <= P.dim:
        raise InputError(f"degree {opts.degree} outside 0..{P.dim}")
    spaces = []
    for i in degrees:
        sp = F.space(i)
        spaces.append({"degree": i, "dim": len(sp), "basis": [x.to_str(P.names) for x in sp.exprs(F.f)],
                       "constraints": sp.constraints})
    rep.data.update({"types": F.labels, "spaces": spaces})
    rep.lines.append(f"{len(F)} resolution types: {', '.join(F.labels)}")
    for s in spaces:
        rep.lines.append(f"U^{s['degree']}: dimension {s['dim']} ({len(s['constraints'])} independent constraints)")
        rep.lines += [f"  {b}" for b in s["basis"]]
    if opts.expr:
        x = parse_symexpr(opts.expr, P.names, {"omega": _omega_expr(F)})
        res = uniformity_test(F, x, opts.mode)
        w = res.witness
        rep.data["test"] = {"expr": opts.expr, "mode": opts.mode, "uniform": res.uniform,
                            "value": res.value, "witness": None if w is None else vars(w)}
        if res.uniform:
            rep.lines.append(f"{opts.expr}: uniform ({opts.mode})")
        else:
            rep.lines.append(f"{opts.expr}: NOT uniform ({opts.mode}); {w.first} gives {format_scalar(w.values[0])}, "
                             f"{w.second} gives {format_scalar(w.values[1])} against {w.against}")
    return rep


def _omega_expr(F: FormFamily) -> SymExpr:
    return SymExpr.thickening(F.omega)


def cmd_local_global(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    F = _family(P, opts)
    R = compact_lg_report(F)
    verts = [{
        "vertex": list(vc.point), "facets": list(vc.facets), "pairs": len(vc.pairs), "rank": vc.rank,
        "generator": None if vc.generator is None else {
            "pair": list(vc.generator.labels), "eta": vc.generator.eta.to_str(P.names), "values": list(vc.generator.values)},
    } for vc in R.vertices]
    rep.data.update({"types": F.labels, "vertices": verts, "cycles": R.cycles, "global_rank": R.global_rank,
                     "span_rank": R.span_rank, "relations": R.relations, "fibonacci": R.fibonacci})
    rep.lines.append(f"{R.cycles} vertex cycles, global rank {R.global_rank}, {R.relations} relations"
                     f" (span of all functionals: rank {R.span_rank})")
    for v in verts:
        line = f"  {_vec(v['vertex'])} on {'∩'.join(v['facets'])}: {v['pairs']} single-vertex pairs, rank {v['rank']}"
        if v["generator"]:
            g = v["generator"]
            line += f"; generator {g['pair'][0]} - {g['pair'][1]} with eta={g['eta']}: {_vec(g['values'])}"
        rep.lines.append(line)
    fib = R.fibonacci
    rep.lines.append(f"expected for n={P.dim}: {fib['groups']} groups in {fib['strings']} strings")
    return rep


def cmd_oracle(P: HPolytope, opts: Options) -> Report:
    rep = _start(P, opts)
    V = enumerate_vertices(P)
    L = face_lattice(P, V)
    dual = generalized_h_vector(L).entries
    primal = generalized_h_vector(L, dual=False).entries
    strings, groups = fibonacci_expected(P.dim)
    rep.data.update({"f_vector": list(L.f_vector), "generalized_h": list(dual), "generalized_h_primal": list(primal),
                     "fibonacci": {"strings": strings, "groups": groups}})
    rep.lines += [
        f"f-vector: {_dims(L.f_vector)}",
        f"toric h of the dual lattice: {_dims(dual)}",
        f"toric h of the face lattice itself: {_dims(primal)}",
    ]
    if V.simple:
        h = simple_h_vector(L.f_vector, P.dim)
        rep.data["simple_h"] = list(h.entries)
        rep.lines.append(f"simple h-vector: {_dims(h.entries)}")
        if h.entries != dual:
            rep.exit_code = 1
    rep.lines.append(f"Fibonacci counts for n={P.dim}: {groups} groups, {strings} strings")
    return rep


COMMANDS = {
    "info": cmd_info,
    "volume-poly": cmd_volume_poly,
    "resolutions": cmd_resolutions,
    "betti": cmd_betti,
    "ih-betti": cmd_ih_betti,
    "uniform": cmd_uniform,
    "local-global": cmd_local_global,
    "oracle": cmd_oracle,
}
