"""JSON certificate envelopes and their re-verification.

Every envelope references its input graph by the sha256 of the canonical
edge-list bytes and stores witnesses as explicit vertex sequences, so an
external tool can audit a certificate from the JSON plus the graph file
alone, with no access to library internals.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .cycles import CycleWitness, PathWitness, verify_cycle, verify_path
from .decompose import (
    AT_MOST,
    DenseCertificate,
    GnrCertificate,
    GnrPiece,
    PeelTrace,
    StabilityOutcome,
)
from .errors import FormatError
from .graph import Bipartition, Graph, is_2_connected
from .graphio import from_graph6, graph_digest
from .oracle import ExtremalRecord, chromatic_number
from .spectral import SpectralResult
from .cycles import find_cycle_exact

SCHEMA_VERSION = 1


def make_envelope(g: Optional[Graph], payload_type: str, payload: dict,
                  params: Optional[dict] = None, verified: bool = True) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "graph_sha256": graph_digest(g) if g is not None else None,
        "params": params or {},
        "payload_type": payload_type,
        "payload": payload,
        "verified": bool(verified),
    }


def dump_envelope(env: dict) -> str:
    return json.dumps(env, indent=2, sort_keys=True) + "\n"


def load_envelope(text: str) -> dict:
    try:
        env = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    if not isinstance(env, dict) or env.get("schema_version") != SCHEMA_VERSION:
        raise FormatError("unsupported certificate schema")
    for key in ("payload_type", "payload"):
        if key not in env:
            raise FormatError(f"missing envelope key {key!r}")
    return env


# -- payload serialization -----------------------------------------------------


def _bip_payload(b: Bipartition) -> dict:
    return {"parts": [sorted(b.parts[0]), sorted(b.parts[1])]}


def _bip_from(payload: dict) -> Bipartition:
    p0, p1 = payload["parts"]
    part_of = {v: 0 for v in p0}
    part_of.update({v: 1 for v in p1})
    return Bipartition(part_of=part_of, parts=(frozenset(p0), frozenset(p1)))


def _trace_payload(t: PeelTrace) -> dict:
    return {
        "mode": t.mode,
        "threshold": [t.threshold.numerator, t.threshold.denominator],
        "within": sorted(t.within) if t.within is not None else None,
        "deletions": [[v, d] for v, d in t.deletions],
        "survivors": sorted(t.survivors),
        "description": t.description,
    }


def _trace_from(payload: dict) -> PeelTrace:
    num, den = payload["threshold"]
    return PeelTrace(
        mode=payload["mode"],
        threshold=Fraction(num, den),
        deletions=tuple((v, d) for v, d in payload["deletions"]),
        survivors=frozenset(payload["survivors"]),
        within=(
            frozenset(payload["within"]) if payload["within"] is not None else None
        ),
        description=payload.get("description", ""),
    )


def cycle_payload(w: CycleWitness) -> dict:
    return {"vertices": list(w.vertices), "length": w.length}


def path_payload(w: PathWitness) -> dict:
    return {"vertices": list(w.vertices)}


def spectral_payload(res: SpectralResult) -> dict:
    return {
        "lambda": res.lam,
        "residual": res.residual,
        "iterations": res.iterations,
        "converged": res.converged,
        "perron": [float(x) for x in res.perron],
    }


def dense_payload(cert: DenseCertificate) -> dict:
    rep = cert.report
    return {
        "params": {
            "k": cert.params.k,
            "r": cert.params.r,
            "c": cert.params.c,
            "n": cert.params.n,
        },
        "f_vertices": sorted(cert.f_vertices),
        "gp_vertices": sorted(cert.gp_vertices),
        "f_bipartition": _bip_payload(cert.f_bipartition),
        "gp_bipartition": _bip_payload(cert.gp_bipartition),
        "v1": sorted(cert.v1),
        "v2": sorted(cert.v2),
        "gp_trace": _trace_payload(cert.gp_trace),
        "f_trace_continuation": _trace_payload(cert.f_trace_continuation),
        "report": {
            "f_order": rep.f_order,
            "gp_order": rep.gp_order,
            "f_min_degree": rep.f_min_degree,
            "gp_min_degree": rep.gp_min_degree,
            "f_two_connected": rep.f_two_connected,
            "gp_two_connected": rep.gp_two_connected,
            "f_order_bound_ok": rep.f_order_bound_ok,
            "gp_order_bound_ok": rep.gp_order_bound_ok,
            "f_degree_bound_ok": rep.f_degree_bound_ok,
            "gp_degree_bound_ok": rep.gp_degree_bound_ok,
            "outside_f_attachment_ok": rep.outside_f_attachment_ok,
            "outside_gp_attachment_ok": rep.outside_gp_attachment_ok,
            "hypotheses_met": rep.hypotheses_met,
            "path_samples": [
                {
                    "u": s.u,
                    "v": s.v,
                    "order": s.order,
                    "ok": s.ok,
                    "vertices": list(s.witness.vertices),
                }
                for s in rep.path_samples
            ],
        },
    }


def gnr_payload(cert: GnrCertificate) -> dict:
    return {
        "n": cert.n,
        "r": cert.r,
        "core": sorted(cert.core),
        "core_bipartition": _bip_payload(cert.core_bipartition),
        "pieces": [
            {"outside": sorted(p.outside), "attach": p.attach} for p in cert.pieces
        ],
        "outside_count": cert.outside_count,
        "coloring": list(cert.coloring),
    }


def gnr_from_payload(payload: dict) -> GnrCertificate:
    return GnrCertificate(
        n=payload["n"],
        r=payload["r"],
        core=frozenset(payload["core"]),
        core_bipartition=_bip_from(payload["core_bipartition"]),
        pieces=tuple(
            GnrPiece(outside=frozenset(p["outside"]), attach=p["attach"])
            for p in payload["pieces"]
        ),
        outside_count=payload["outside_count"],
        coloring=tuple(payload["coloring"]),
    )


def stability_payload(out: StabilityOutcome) -> dict:
    return {
        "kind": out.kind,
        "cycle": cycle_payload(out.cycle) if out.cycle is not None else None,
        "gnr": gnr_payload(out.gnr) if out.gnr is not None else None,
        "extremal_map": (
            {str(k): v for k, v in out.extremal_map.items()}
            if out.extremal_map is not None
            else None
        ),
        "diagnostics": _json_safe(out.diagnostics),
    }


def record_payload(rec: ExtremalRecord) -> dict:
    return {
        "n": rec.n,
        "forbidden_cycle": rec.forbidden_cycle,
        "constraint": list(rec.constraint) if rec.constraint else None,
        "kind": rec.kind,
        "optimum": rec.optimum,
        "extremal_graph6": list(rec.extremal_graph6),
        "unique": rec.unique,
        "stats": _json_safe(rec.stats),
    }


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(x) for x in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, Fraction):
        return [obj.numerator, obj.denominator]
    return obj


# -- re-verification -----------------------------------------------------------


def verify_envelope(env: dict, g: Graph) -> tuple[bool, list]:
    """Re-verify a certificate against the graph file alone."""
    notes = []
    if env.get("graph_sha256") not in (None, graph_digest(g)):
        return False, ["graph digest mismatch"]
    ptype = env["payload_type"]
    payload = env["payload"]
    checker = _CHECKERS.get(ptype)
    if checker is None:
        return False, [f"unknown payload type {ptype!r}"]
    ok = checker(payload, g, env.get("params") or {}, notes)
    return ok, notes


def _check_cycle(payload, g, params, notes) -> bool:
    w = CycleWitness(tuple(payload["vertices"]))
    if not verify_cycle(g, w, payload["length"]):
        notes.append("cycle witness failed verification")
        return False
    return True


def _check_path(payload, g, params, notes) -> bool:
    w = PathWitness(tuple(payload["vertices"]))
    if not verify_path(g, w):
        notes.append("path witness failed verification")
        return False
    return True


def _check_spectral(payload, g, params, notes) -> bool:
    lam = payload["lambda"]
    x = payload["perron"]
    if len(x) != g.n:
        notes.append("perron vector length mismatch")
        return False
    xmax = max(x) if x else 1.0
    if abs(xmax - 1.0) > 1e-9:
        notes.append("perron vector is not scaled to max 1")
        return False
    worst = 0.0
    for v in g.vertices():
        s = sum(x[w] for w in g.neighbors(v))
        worst = max(worst, abs(lam * x[v] - s))
    stated = payload["residual"]
    if worst > max(stated * 1.001, stated + 1e-9):
        notes.append(f"recomputed residual {worst} exceeds stated {stated}")
        return False
    return True


def _check_dense(payload, g, params, notes) -> bool:
    fset = frozenset(payload["f_vertices"])
    gp = frozenset(payload["gp_vertices"])
    if not fset <= gp:
        notes.append("F is not contained in G'")
        return False
    gp_trace = _trace_from(payload["gp_trace"])
    f_cont = _trace_from(payload["f_trace_continuation"])
    if not gp_trace.replay(g):
        notes.append("G' peel trace does not replay")
        return False
    if not f_cont.replay(g):
        notes.append("F continuation trace does not replay")
        return False
    if gp_trace.survivors != gp or f_cont.survivors != fset:
        notes.append("trace survivors disagree with stated vertex sets")
        return False
    fb = _bip_from(payload["f_bipartition"])
    gb = _bip_from(payload["gp_bipartition"])
    if not (fb.verify(g) and fb.support == fset):
        notes.append("F bipartition invalid")
        return False
    if not (gb.verify(g) and gb.support == gp):
        notes.append("G' bipartition invalid")
        return False
    rep = payload["report"]
    c = payload["params"]["c"]
    k = payload["params"]["k"]
    f_min = min(len(g.neighbors(v) & fset) for v in fset)
    gp_min = min(len(g.neighbors(v) & gp) for v in gp)
    recomputed = {
        "f_order": len(fset),
        "gp_order": len(gp),
        "f_min_degree": f_min,
        "gp_min_degree": gp_min,
        "f_two_connected": is_2_connected(g, fset),
        "gp_two_connected": is_2_connected(g, gp),
        "f_order_bound_ok": len(fset) >= g.n - 10 * c,
        "gp_order_bound_ok": len(gp) >= g.n - 2 * c,
        "f_degree_bound_ok": 5 * f_min > 2 * g.n,
        "gp_degree_bound_ok": gp_min >= 11 * c,
        "hypotheses_met": g.m >= (g.n - c) ** 2 / 4
        and g.n >= max(50 * c, 50 * k),
    }
    for key, val in recomputed.items():
        if rep.get(key) != val:
            notes.append(f"report field {key} disagrees: {rep.get(key)} vs {val}")
            return False
    for s in rep["path_samples"]:
        if s["ok"] and not verify_path(g, PathWitness(tuple(s["vertices"]))):
            notes.append(f"path sample {s['u']}-{s['v']} failed")
            return False
    return True


def _check_gnr(payload, g, params, notes) -> bool:
    cert = gnr_from_payload(payload)
    if not cert.verify(g):
        notes.append("suspension certificate failed invariants")
        return False
    return True


def _check_stability(payload, g, params, notes) -> bool:
    kind = payload["kind"]
    if kind == "cycle_found":
        k = params.get("k")
        length = payload["cycle"]["length"]
        if k is not None and length != 2 * k + 1:
            notes.append("cycle length does not match the forbidden length")
            return False
        return _check_cycle(payload["cycle"], g, params, notes)
    if kind == "gnr_member":
        return _check_gnr(payload["gnr"], g, params, notes)
    if kind == "extremal_match":
        from .construct import extremal_suspension

        r = params.get("r")
        if r is None:
            notes.append("extremal match needs r in params")
            return False
        mapping = {int(k): v for k, v in payload["extremal_map"].items()}
        target = extremal_suspension(g.n, int(r))
        mapped = {
            (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
            for u, v in g.edges()
        }
        if mapped != set(target.edges()):
            notes.append("extremal isomorphism map does not carry edges")
            return False
        return True
    if kind == "undecided":
        notes.append("undecided outcome carries no witness")
        return True
    notes.append(f"unknown outcome kind {kind!r}")
    return False


def _check_record(payload, g, params, notes) -> bool:
    length = payload["forbidden_cycle"]
    constraint = payload["constraint"]
    for s in payload["extremal_graph6"]:
        h = from_graph6(s)
        if h.n != payload["n"]:
            notes.append("extremal graph order mismatch")
            return False
        if find_cycle_exact(h, length).status != "none":
            notes.append(f"extremal graph {s} contains the forbidden cycle")
            return False
        if constraint and constraint[0] == "chromatic":
            if chromatic_number(h).value < constraint[1]:
                notes.append(f"extremal graph {s} misses the chromatic constraint")
                return False
        if payload["kind"] == "edges" and h.m != payload["optimum"]:
            notes.append("edge count disagrees with the recorded optimum")
            return False
        if payload["kind"] == "spectral":
            from .spectral import spectral_radius

            lam = spectral_radius(h).lam
            if abs(lam - payload["optimum"]) > 1e-8:
                notes.append("spectral radius disagrees with the recorded optimum")
                return False
    return True


def _check_cycle_search(payload, g, params, notes) -> bool:
    status = payload["status"]
    if status == "found":
        return _check_cycle(payload["witness"], g, params, notes)
    if status == "budget":
        notes.append("budget-exhausted search certifies nothing")
        return False
    rerun = find_cycle_exact(g, payload["length"], params.get("budget", 10_000_000))
    if rerun.status != "none":
        notes.append(f"rerun disagrees with definitive none: {rerun.status}")
        return False
    return True


def _check_suspension_spec(payload, g, params, notes) -> bool:
    from .construct import Piece, SuspensionSpec

    spec = SuspensionSpec(
        core_vertices=frozenset(payload["core_vertices"]),
        pieces=tuple(
            Piece(outside=frozenset(p["outside"]), attach=p["attach"])
            for p in payload["pieces"]
        ),
    )
    if not spec.validate(g):
        notes.append("suspension spec failed invariants")
        return False
    return True


_CHECKERS = {
    "cycle_witness": _check_cycle,
    "cycle_search": _check_cycle_search,
    "path_witness": _check_path,
    "spectral_result": _check_spectral,
    "dense_certificate": _check_dense,
    "gnr_certificate": _check_gnr,
    "stability_outcome": _check_stability,
    "extremal_record": _check_record,
    "suspension_spec": _check_suspension_spec,
}
