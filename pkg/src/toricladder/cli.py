"""Command-line front end.

Type vectors are bitstrings written t_1 first: ``--n 5 --t 111110`` is t = (1,1,1,1,1,0).
Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .artinian import hilbert_table_csv, hilbert_vector
from .errors import InvalidInputError
from .family import (
    bitstring,
    build_graph,
    build_ladder,
    generators_to_json,
    is_chordal_bipartite,
    parse_type_vector,
    standard_generators,
    variable_indices,
)
from .groebner import hilbert_numerator, initial_ideal, krull_dimension
from .invariants import cm_certificate, full_report, generator_polynomials
from .lattice import PATCHES, admissible_f_vectors, refute_lattice_realizability
from .verify import MAX_N, instances, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
WORKERS_ENV = "TORICLADDER_WORKERS"


class CapExceeded(Exception):
    pass


def emit(obj, fmt="json"):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        print(obj)


def _instance(args):
    if args.t is None:
        raise InvalidInputError("--t is required")
    t = parse_type_vector(args.n, args.t)
    return args.n, t


def _check_cap(n):
    if n > MAX_N:
        raise CapExceeded(f"n={n} exceeds the supported maximum {MAX_N} (dimension search is exponential)")


def cmd_ladder(args):
    n, t = _instance(args)
    grid = build_ladder(n, t)
    graph = build_graph(grid)
    summary = {
        "row_vertices": len(graph.row_vertices),
        "col_vertices": len(graph.col_vertices),
        "edges": len(graph.edges),
        "chordal_bipartite": is_chordal_bipartite(graph),
    }
    if args.format == "json":
        emit({**grid.to_json(), "graph": summary})
    else:
        print(grid.render())
        print()
        print(f"G_{n}^{bitstring(t)}: {summary['row_vertices']} + {summary['col_vertices']} vertices, "
              f"{summary['edges']} edges, chordal bipartite: {summary['chordal_bipartite']}")
    return EXIT_OK


def cmd_generators(args):
    n, t = _instance(args)
    gens = standard_generators(n, t)
    if args.format == "json":
        emit({"n": n, "t": bitstring(t), "generators": generators_to_json(gens)})
    else:
        for k, g in enumerate(gens, 1):
            print(f"s{k} = {g}")
    return EXIT_OK


def cmd_groebner_check(args):
    n, t = _instance(args)
    _check_cap(n)
    basis = generator_polynomials(n, t)
    cert = cm_certificate(n, t)
    init = initial_ideal(basis)
    out = {
        "n": n,
        "t": bitstring(t),
        "groebner": bool(cert.groebner),
        "initial": [str(m) for m in init.gens],
        "dimension": krull_dimension(init),
        "numerator": list(hilbert_numerator(init).coeffs),
    }
    if args.format == "json":
        emit(out)
    else:
        print(f"groebner: {out['groebner']}")
        print(f"initial ideal: ({', '.join(out['initial'])})")
        print(f"dimension: {out['dimension']}")
        print(f"numerator: {out['numerator']}")
    return EXIT_OK if out["groebner"] else EXIT_FAIL


def cmd_hilbert(args):
    if args.format == "csv":
        sys.stdout.write(hilbert_table_csv(args.max_n))
    else:
        rows = [{"n": n, "dims": list(hilbert_vector(n).dims)} for n in range(args.max_n + 1)]
        emit(rows if args.format == "json" else "\n".join(f"{r['n']}: {r['dims']}" for r in rows), args.format)
    return EXIT_OK


def cmd_invariants(args):
    n, t = _instance(args)
    _check_cap(n)
    report = full_report(n, t)
    if args.format == "json":
        emit(report.to_json())
    else:
        for k, v in report.to_json().items():
            print(f"{k}: {v}")
    return EXIT_OK if report.cm_certified else EXIT_FAIL


def cmd_lattice(args):
    if args.patch is not None:
        gens, forced = PATCHES[args.patch]
        found = sorted(admissible_f_vectors(gens, forced, workers=args.workers))
        emit({"patch": args.patch, "generators": [f"{''.join(g.pos)} - {''.join(g.neg)}" for g in gens], "admissible_f": found}, "json")
        return EXIT_OK
    n, t = _instance(args)
    result = refute_lattice_realizability(standard_generators(n, t), variable_indices(n), workers=args.workers)
    out = {"n": n, "t": bitstring(t), **result.to_json()}
    if args.format == "json":
        emit(out)
    else:
        print(f"{result.verdict} ({result.branches} orientation branches)")
        if result.verdict == "Refuted":
            print(f"dead ends: {len(result.dead_ends)}, coverage {result.coverage}")
    return EXIT_OK


def cmd_report(args):
    pairs = instances(min(args.max_n, MAX_N), all_t=args.all_t)
    reports = [full_report(n, t).to_json() for n, t in pairs]
    reports.sort(key=lambda r: (r["n"], r["t"]))
    if args.format == "csv":
        keys = ["n", "t", "dim", "pdim", "reg_ring", "reg_ideal", "multiplicity", "fibonacci_index", "koszul",
                "cm_certified"]
        print(",".join(keys))
        for r in reports:
            print(",".join(str(r[k]) for k in keys))
    else:
        emit(reports)
    return EXIT_CAP if args.max_n > MAX_N else EXIT_OK


def cmd_verify(args):
    if args.t is not None:
        pairs = [(len(args.t) - 1, parse_type_vector(len(args.t) - 1, args.t))]
        if pairs[0][0] > args.max_n:
            raise InvalidInputError(f"--t has length {len(args.t)} but --max-n is {args.max_n}")
    else:
        pairs = instances(min(args.max_n, MAX_N), all_t=args.all_t)
    pairs = [p for p in pairs if p[0] <= MAX_N]
    sweep = run_sweep(pairs, workers=args.workers, time_limit=args.time_limit)
    if args.max_n > MAX_N and args.t is None:
        sweep.capped = True
        sweep.cap_reason = f"n above {MAX_N} skipped"
    if args.lattice:
        verdicts = {}
        for n, t in pairs:
            result = refute_lattice_realizability(standard_generators(n, t), variable_indices(n), workers=1)
            verdicts[f"{n}:{bitstring(t)}"] = result.verdict
        sweep.extra["lattice"] = verdicts
    out = sweep.to_json()
    if not args.full:
        out.pop("results")
    out["checked"] = len(sweep.results)
    if args.format == "json":
        emit(out)
    else:
        print(f"{'PASS' if sweep.passed else 'FAIL'}: {len(sweep.results)} instances")
        for f in out["failures"]:
            print(f"  n={f['n']} t={f['t']}: {', '.join(f['failed'])}")
        for key, verdict in out.get("lattice", {}).items():
            print(f"  lattice {key}: {verdict}")
        if sweep.capped:
            print(f"  capped: {sweep.cap_reason}")
    if sweep.capped:
        return EXIT_CAP
    return EXIT_OK if sweep.passed else EXIT_FAIL


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInputError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricladder",
        description="Ladder-like toric rings R(n,t): construction, certificates and reports. "
        "t is a bitstring written t_1 first.",
        epilog=f"Exit codes: 0 pass, 1 verification failure, 2 usage, 3 resource cap (n > {MAX_N} or time limit). "
        f"Worker count defaults to ${WORKERS_ENV}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_args(p, formats=("json", "text"), default="text"):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--t", required=True, help="type vector, e.g. 111110")
        p.add_argument("--format", choices=formats, default=default)

    instance_args(sub.add_parser("ladder", help="print L_n^t and a summary of G_n^t"))
    instance_args(sub.add_parser("generators", help="list s_1..s_{2n+1}"))
    instance_args(sub.add_parser("groebner-check", help="Groebner test, initial ideal, dimension"), default="json")
    instance_args(sub.add_parser("invariants", help="invariant report for one instance"), default="json")

    p = sub.add_parser("hilbert", help="Hilbert functions of the Artinian reductions")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--format", choices=("csv", "json", "text"), default="csv")

    p = sub.add_parser("lattice", help="lattice refutation for an instance or a literal ladder patch")
    p.add_argument("--n", type=int)
    p.add_argument("--t")
    p.add_argument("--patch", type=int, choices=sorted(PATCHES))
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("report", help="invariant reports for a sweep")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--all-t", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="run every check over a sweep")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--all-t", action="store_true", help="every t (default: only t = 1...1)")
    p.add_argument("--t", help="verify one type vector instead of a sweep")
    p.add_argument("--lattice", action="store_true", help="also run the lattice refuter")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None, help="seconds before stopping with exit code 3")
    p.add_argument("--full", action="store_true", help="include per-instance results")
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


COMMANDS = {
    "ladder": cmd_ladder,
    "generators": cmd_generators,
    "groebner-check": cmd_groebner_check,
    "hilbert": cmd_hilbert,
    "invariants": cmd_invariants,
    "lattice": cmd_lattice,
    "report": cmd_report,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "workers", 0) is None:
            args.workers = default_workers()
        if args.command == "lattice" and args.patch is None and args.n is None:
            raise InvalidInputError("lattice needs --patch or --n/--t")
        return COMMANDS[args.command](args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
