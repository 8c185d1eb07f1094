"""Command-line surface.

Machine-readable output (edge lists, JSON certificates, graph6 lines) goes
to stdout; diagnostics go to stderr.  Exit codes: 0 success/verified,
1 verification failure, 2 usage error, 3 budget or size limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import certify
from .construct import (
    c5_blowup,
    extremal_suspension,
    random_gnr_member,
    star_suspension_family,
    turan,
)
from .cycles import find_cycle_exact
from .decompose import AnalysisParams, stability_decompose
from .errors import FormatError, InvalidParameterError, OddstabError, SizeLimitError
from .graphio import read_graph_file, to_graph6, write_edge_list
from .oracle import (
    chromatic_number,
    enumerate_graphs,
    ex_bruteforce,
    ex_chromatic_bruteforce,
    spex_bruteforce,
)
from .spectral import (
    coarsest_equitable_partition,
    quotient_matrix,
    spectral_radius,
)
from .suites import CRITERIA, SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _err(msg: str) -> None:
    sys.stderr.write(msg.rstrip() + "\n")


def _cmd_construct(args) -> int:
    if args.family == "turan":
        g = turan(args.n, args.r)
    elif args.family == "extremal-suspension":
        g = extremal_suspension(args.n, args.r)
    elif args.family == "star-suspension":
        g = star_suspension_family(args.n, args.r)
    elif args.family == "c5-blowup":
        g = c5_blowup(args.a, args.b, args.c)
    elif args.family == "gnr-random":
        g, spec = random_gnr_member(args.n, args.r, seed=args.seed, p=args.p)
        if args.spec_out:
            payload = {
                "core_vertices": sorted(spec.core_vertices),
                "pieces": [
                    {"outside": sorted(p.outside), "attach": p.attach}
                    for p in spec.pieces
                ],
                "outside_count": spec.outside_count,
            }
            env = certify.make_envelope(g, "suspension_spec", payload,
                                        params={"n": args.n, "r": args.r,
                                                "seed": args.seed, "p": args.p})
            with open(args.spec_out, "w", encoding="ascii") as fh:
                fh.write(certify.dump_envelope(env))
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidParameterError(args.family)
    out = write_edge_list(g)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = read_graph_file(args.graph)
    params = AnalysisParams.for_graph(g, k=args.k, r=args.r, c=args.c)
    out = stability_decompose(g, params)
    payload = certify.stability_payload(out)
    env = certify.make_envelope(
        g,
        "stability_outcome",
        payload,
        params={"k": args.k, "r": args.r, "c": params.c},
        verified=out.kind != "undecided",
    )
    _emit(env)
    return EXIT_OK if out.kind != "undecided" else EXIT_VERIFY_FAIL


def _cmd_spectral(args) -> int:
    g = read_graph_file(args.graph)
    out = {}
    if args.method in ("power", "both"):
        res = spectral_radius(g, tol=args.tol)
        out["power"] = certify.spectral_payload(res)
        if not res.converged:
            _err("power iteration did not converge within the iteration cap")
            _emit(out)
            return EXIT_LIMIT
    if args.method in ("quotient", "both"):
        parts = coarsest_equitable_partition(g)
        qm = quotient_matrix(g, parts)
        out["quotient"] = {
            "partition": [sorted(p) for p in qm.parts],
            "entries": [list(row) for row in qm.entries],
            "equitable": qm.equitable,
            "lambda": qm.leading_eigenvalue() if qm.equitable else None,
        }
    if args.method == "both" and out["quotient"]["lambda"] is not None:
        out["agreement"] = abs(out["power"]["lambda"] - out["quotient"]["lambda"])
    _emit(out)
    return EXIT_OK


def _cmd_cycles(args) -> int:
    g = read_graph_file(args.graph)
    res = find_cycle_exact(g, args.length, budget=args.budget)
    payload = {
        "status": res.status,
        "expansions": res.expansions,
        "length": args.length,
        "witness": certify.cycle_payload(res.witness) if res.witness else None,
    }
    env = certify.make_envelope(
        g,
        "cycle_search",
        payload,
        params={"length": args.length, "budget": args.budget},
        verified=res.status != "budget",
    )
    _emit(env)
    return EXIT_LIMIT if res.status == "budget" else EXIT_OK


def _cmd_oracle(args) -> int:
    if args.oracle_cmd == "ex":
        rec = ex_bruteforce(args.n, args.cycle)
    elif args.oracle_cmd == "ex-chromatic":
        rec = ex_chromatic_bruteforce(args.n, args.cycle, args.r)
    elif args.oracle_cmd == "spex":
        rec = spex_bruteforce(args.n, args.cycle, args.r)
    elif args.oracle_cmd == "chi":
        g = read_graph_file(args.graph)
        res = chromatic_number(g)
        _emit({"chromatic_number": res.value, "coloring": list(res.coloring)})
        return EXIT_OK
    elif args.oracle_cmd == "enumerate":
        count = 0
        for g in enumerate_graphs(args.n):
            count += 1
            if not args.count_only:
                sys.stdout.write(to_graph6(g) + "\n")
        if args.count_only:
            _emit({"n": args.n, "count": count})
        return EXIT_OK
    else:  # pragma: no cover
        raise InvalidParameterError(args.oracle_cmd)
    payload = certify.record_payload(rec)
    if args.fixtures:
        name = f"{rec.kind}-n{rec.n}-c{rec.forbidden_cycle}"
        if rec.constraint:
            name += f"-r{rec.constraint[1]}"
        with open(f"{args.fixtures}/{name}.json", "w", encoding="ascii") as fh:
            fh.write(certify.dump_envelope(
                certify.make_envelope(None, "extremal_record", payload)
            ))
    _emit(payload)
    return EXIT_OK


def _cmd_spectral_grid(args) -> int:
    from .spectral import suspension_lambda_quotient

    ns = [int(x) for x in args.n_list.split(",") if x]
    rs = [int(x) for x in args.r_list.split(",") if x]
    lines = ["n,r,lambda"]
    for n in ns:
        for r in rs:
            if n < r + 2:
                continue
            lam = suspension_lambda_quotient(n - r + 1, r)
            lines.append(f"{n},{r},{lam:.12f}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = [name for _, name in CRITERIA] if args.suite == "all" else [args.suite]
    if any(name not in SUITES for name in names):
        _err(f"unknown suite; known: all, {', '.join(sorted(SUITES))}")
        return EXIT_USAGE
    all_ok = True
    for name in names:
        rep = run_suite(name, seed=args.seed)
        for line in rep.lines():
            print(line)
        _err(f"suite {name}: {'PASS' if rep.passed else 'FAIL'} "
             f"in {rep.duration:.1f}s")
        all_ok &= rep.passed
    return EXIT_OK if all_ok else EXIT_VERIFY_FAIL


def _cmd_certcheck(args) -> int:
    with open(args.envelope, "r", encoding="ascii") as fh:
        env = certify.load_envelope(fh.read())
    g = read_graph_file(args.graph)
    ok, notes = certify.verify_envelope(env, g)
    for note in notes:
        _err(note)
    _emit({"verified": ok, "notes": notes})
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="oddstab",
        description="Structural and spectral stability toolkit for graphs "
        "without a fixed odd cycle",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="emit a named family member as an edge list")
    c.add_argument("family", choices=[
        "turan", "extremal-suspension", "star-suspension", "c5-blowup", "gnr-random",
    ])
    c.add_argument("--n", type=int, default=10)
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--a", type=int, default=1)
    c.add_argument("--b", type=int, default=1)
    c.add_argument("--c", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--p", type=float, default=0.7)
    c.add_argument("--out", type=str, default=None)
    c.add_argument("--spec-out", type=str, default=None)
    c.set_defaults(func=_cmd_construct)

    d = sub.add_parser("decompose", help="run the stability pipeline on a graph file")
    d.add_argument("--graph", required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--c", type=int, default=None)
    d.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("spectral", help="spectral radius by power iteration / quotient")
    s.add_argument("--graph", required=True)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--method", choices=["power", "quotient", "both"], default="power")
    s.set_defaults(func=_cmd_spectral)

    cy = sub.add_parser("cycles", help="exact fixed-length cycle search")
    cy_sub = cy.add_subparsers(dest="cycles_cmd", required=True)
    cf = cy_sub.add_parser("find")
    cf.add_argument("--graph", required=True)
    cf.add_argument("--length", type=int, required=True)
    cf.add_argument("--budget", type=int, default=10_000_000)
    cf.set_defaults(func=_cmd_cycles)

    o = sub.add_parser("oracle", help="exhaustive ground-truth computations")
    o_sub = o.add_subparsers(dest="oracle_cmd", required=True)
    for name in ("ex", "ex-chromatic", "spex"):
        p = o_sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--cycle", type=int, required=True)
        if name != "ex":
            p.add_argument("--r", type=int, required=True)
        p.add_argument("--fixtures", type=str, default=None)
        p.set_defaults(func=_cmd_oracle)
    pe = o_sub.add_parser("enumerate")
    pe.add_argument("--n", type=int, required=True)
    pe.add_argument("--count-only", action="store_true")
    pe.set_defaults(func=_cmd_oracle)
    pc = o_sub.add_parser("chi")
    pc.add_argument("--graph", required=True)
    pc.set_defaults(func=_cmd_oracle)

    sg = sub.add_parser(
        "spectral-grid",
        help="CSV table of extremal-family lambda values over an (n, r) grid",
    )
    sg.add_argument("--n-list", required=True, help="comma-separated orders")
    sg.add_argument("--r-list", required=True, help="comma-separated family indices")
    sg.add_argument("--out", type=str, default=None)
    sg.set_defaults(func=_cmd_spectral_grid)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=_cmd_verify)

    cc = sub.add_parser("certcheck", help="re-verify a JSON certificate envelope")
    cc.add_argument("--envelope", required=True)
    cc.add_argument("--graph", required=True)
    cc.set_defaults(func=_cmd_certcheck)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except SizeLimitError as exc:
        _err(f"size limit: {exc}")
        return EXIT_LIMIT
    except (InvalidParameterError, FormatError) as exc:
        _err(f"usage error: {exc}")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        _err(f"missing file: {exc}")
        return EXIT_USAGE
    except OddstabError as exc:
        _err(f"error: {exc}")
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
