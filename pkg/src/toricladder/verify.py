"""Per-instance verification sweep shared by the CLI and the acceptance tests."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .artinian import fibonacci, hilbert_vector, length
from .family import (
    all_type_vectors,
    bitstring,
    build_graph,
    build_ladder,
    distinguished_minors,
    edge_map_vanishing,
    four_cycles,
    is_chordal_bipartite,
    parse_type_vector,
    standard_generators,
)
from .groebner import buchberger, initial_ideal, krull_dimension, krull_dimension_independent
from .invariants import (
    cm_certificate,
    comb_graph,
    edges_of_ideal,
    expected_initial_ideal,
    full_report,
    generator_polynomials,
    reg_bounds,
)

MAX_N = 10  # vertex-cover dimension is exponential; 2n + 4 <= 24 variables


@dataclass
class InstanceResult:
    n: int
    t: tuple[int, ...]
    checks: dict[str, bool]
    report: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def to_json(self) -> dict:
        return {"n": self.n, "t": bitstring(self.t), "passed": self.passed, "checks": self.checks, "report": self.report}


def graph_checks(n: int, t) -> dict[str, bool]:
    grid = build_ladder(n, t)
    graph = build_graph(grid)
    gens = standard_generators(n, t)
    degrees = graph.degrees()
    minors = {b.unsigned() for b in distinguished_minors(grid)}
    cycles = {c.binomial().unsigned() for c in four_cycles(graph)}
    return {
        "chordal_bipartite": is_chordal_bipartite(graph),
        "min_degree_2": min(degrees.values()) >= 2,
        "bipartition": (len(graph.row_vertices), len(graph.col_vertices)) == (n // 2 + 2, (n + 1) // 2 + 2),
        "four_cycles_are_minors": cycles == minors and len(four_cycles(graph)) == len(minors),
        "minors_are_generators": minors == {g.unsigned() for g in gens},
        "generators_vanish": all(edge_map_vanishing(g, graph) for g in gens),
    }


def algebra_checks(n: int, t) -> tuple[dict[str, bool], dict]:
    basis = generator_polynomials(n, t)
    init = initial_ideal(basis)
    cert = cm_certificate(n, t)
    report = full_report(n, t, cert)
    lower, upper = reg_bounds(n, t)
    hv = hilbert_vector(n)
    checks = {
        "groebner": bool(cert.groebner),
        "buchberger_closed": len(buchberger(basis)) == len(basis),
        "initial_closed_form": init == expected_initial_ideal(n),
        "initial_is_comb": edges_of_ideal(init) == comb_graph(n).edges,
        "dimension": krull_dimension(init) == n + 3 == krull_dimension_independent(init),
        "hat_groebner": bool(cert.hat_groebner),
        "hat_hilbert_matches_closed_form": cert.hat_hilbert == hv.dims,
        "cm_certificate": cert.holds,
        "pdim": report.pdim == n + 1,
        "multiplicity": report.multiplicity == length(n) == fibonacci(n + 3),
        "reg_ring": report.reg_ring == n // 2 + 1,
        "reg_bounds_meet": lower == upper == n // 2 + 2,
        "reg_routes_agree": report.reg_ideal == report.reg_ring + 1,
        "koszul": report.koszul,
    }
    return checks, report.to_json()


def verify_instance(n: int, t) -> InstanceResult:
    t = parse_type_vector(n, t)
    checks = graph_checks(n, t)
    more, report = algebra_checks(n, t)
    checks.update(more)
    return InstanceResult(n, t, checks, report)


def _verify_args(args):
    return verify_instance(*args)


@dataclass
class Sweep:
    results: list[InstanceResult]
    capped: bool = False
    cap_reason: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        fails = [{"n": r.n, "t": bitstring(r.t), "failed": r.failures()} for r in self.results if not r.passed]
        out = {
            "passed": self.passed,
            "instances": len(self.results),
            "capped": self.capped,
            "failures": fails,
            "results": [r.to_json() for r in self.results],
        }
        if self.cap_reason:
            out["cap_reason"] = self.cap_reason
        out.update({k: v for k, v in self.extra.items()})
        return out


def instances(max_n: int, all_t: bool = True, min_n: int = 0):
    """(n, t) pairs sorted by n then by the bitstring of t; only t = 1...1 unless all_t."""
    out = []
    for n in range(min_n, max_n + 1):
        if all_t:
            out += [(n, v) for v in all_type_vectors(n)]
        else:
            out.append((n, (1,) * (n + 1)))
    return sorted(out, key=lambda p: (p[0], bitstring(p[1])))


def run_sweep(pairs, workers: int = 1, time_limit: float | None = None) -> Sweep:
    """Verify every pair; stop early (capped) when the time limit passes.

    Results come back in the order of ``pairs`` regardless of worker count.
    """
    start = time.monotonic()
    results: list[InstanceResult] = []

    def over():
        return time_limit is not None and time.monotonic() - start > time_limit

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # chunks keep the time check meaningful while preserving order
            chunk = max(workers * 4, 1)
            for k in range(0, len(pairs), chunk):
                results += list(pool.map(_verify_args, pairs[k : k + chunk]))
                if over() and k + chunk < len(pairs):
                    return Sweep(results, True, f"time limit {time_limit}s reached")
    else:
        for p in pairs:
            results.append(verify_instance(*p))
            if over() and len(results) < len(pairs):
                return Sweep(results, True, f"time limit {time_limit}s reached")
    return Sweep(results)
