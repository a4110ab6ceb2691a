"""Headline invariants of R(n,t): dimension, depth certificate, pd, regularity, multiplicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .artinian import fibonacci, hat_initial_ideal, hat_is_groebner, hat_reduce, hilbert_vector, length
from .errors import IntegrityError
from .family import bitstring, build_graph, build_ladder, parse_type_vector, standard_generators, variable_indices
from .groebner import (
    GroebnerCheck,
    HilbertNumerator,
    MonomialIdeal,
    hilbert_numerator,
    initial_ideal,
    is_groebner,
    krull_dimension,
    poly_mul,
    standard_monomials,
    trim,
)
from .polyring import Polynomial, VarSet


def generator_polynomials(n: int, t) -> list[Polynomial]:
    varset = VarSet(variable_indices(n))
    return [Polynomial.from_binomial(varset, b) for b in standard_generators(n, t)]


def expected_initial_ideal(n: int) -> MonomialIdeal:
    """(x_2 x_3, x_{2i+1} x_{2i+3}, x_{2i+2} x_{2i+3} : 1 <= i <= n)."""
    v = VarSet(variable_indices(n))
    monos = [v.monomial(2, 3)]
    for i in range(1, n + 1):
        monos += [v.monomial(2 * i + 1, 2 * i + 3), v.monomial(2 * i + 2, 2 * i + 3)]
    return MonomialIdeal.from_monomials(v, monos)


@lru_cache(maxsize=None)
def artinian_hilbert_function(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Standard-monomial counts by degree for a zero-dimensional monomial quotient."""
    dims, d = [], 0
    while True:
        count = len(standard_monomials(ideal, d))
        if not count:
            return tuple(dims)
        dims.append(count)
        d += 1


@dataclass(frozen=True)
class CMCertificate:
    groebner: GroebnerCheck
    hat_groebner: GroebnerCheck
    numerator: HilbertNumerator
    hat_hilbert: tuple[int, ...]
    predicted: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return bool(self.groebner) and bool(self.hat_groebner) and self.numerator.coeffs == self.predicted

    def __bool__(self):
        return self.holds


def cm_certificate(n: int, t) -> CMCertificate:
    """Compare Hilb numerator of S/in(I) with hat-Hilbert(tau) * (1 - tau)^{n+1}.

    Equality means each element of the linear sequence cuts the Hilbert series by
    exactly (1 - tau), i.e. the sequence is regular and R(n,t) is Cohen-Macaulay.
    """
    basis = generator_polynomials(n, t)
    gb = is_groebner(basis)
    numerator = hilbert_numerator(initial_ideal(basis))
    hat = hat_reduce(n, t)
    hat_gb = hat_is_groebner(hat)
    hat_hilb = artinian_hilbert_function(hat_initial_ideal(hat))
    factor = [1]
    for _ in range(n + 1):
        factor = poly_mul(factor, [1, -1])
    predicted = trim(poly_mul(list(hat_hilb), factor))
    return CMCertificate(gb, hat_gb, numerator, hat_hilb, predicted)


def regular_sequence_certificate(n: int, t) -> bool:
    return cm_certificate(n, t).holds


@dataclass(frozen=True)
class CombGraph:
    spine: tuple[int, ...]
    tines: tuple[int, ...]
    edges: frozenset  # of sorted (a, b) variable pairs


def comb_graph(n: int) -> CombGraph:
    spine = tuple(range(3, 2 * n + 4, 2))
    tines = tuple(range(2, 2 * n + 3, 2))
    edges = {(2, 3)}
    for i in range(1, n + 1):
        edges |= {(2 * i + 1, 2 * i + 3), (2 * i + 2, 2 * i + 3)}
    return CombGraph(spine, tines, frozenset(edges))


def edges_of_ideal(ideal: MonomialIdeal) -> frozenset:
    """Quadratic squarefree generators read as graph edges."""
    out = set()
    for g in ideal.gens:
        support = g.support()
        if g.degree != 2 or len(support) != 2:
            raise ValueError(f"{g} is not a squarefree quadric")
        out.add(tuple(sorted(support)))
    return frozenset(out)


def is_induced_matching(edges, chosen) -> bool:
    chosen = list(chosen)
    ends = [set(e) for e in chosen]
    for a in range(len(chosen)):
        for b in range(a + 1, len(chosen)):
            if ends[a] & ends[b]:
                return False
            if any(set(e) <= ends[a] | ends[b] and not (set(e) <= ends[a] or set(e) <= ends[b]) for e in edges):
                return False
    return True


@lru_cache(maxsize=None)
def _max_induced_matching(edges: frozenset) -> tuple:
    order = sorted(edges)
    m = len(order)
    # conflict: shared endpoint, or some edge joins the two
    conflict = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if not is_induced_matching(edges, [order[a], order[b]]):
                conflict[a] |= 1 << b
                conflict[b] |= 1 << a
    best = [0]

    def grow(k, chosen, banned):
        if chosen.bit_count() + (m - k) <= best[0].bit_count():
            return
        if k == m:
            best[0] = chosen
            return
        if not banned >> k & 1:
            grow(k + 1, chosen | 1 << k, banned | conflict[k])
        grow(k + 1, chosen, banned)

    grow(0, 0, 0)
    return tuple(order[k] for k in range(m) if best[0] >> k & 1)


def max_induced_matching(graph) -> tuple[int, tuple]:
    """Exact maximum induced matching of a CombGraph or an edge collection."""
    edges = graph.edges if isinstance(graph, CombGraph) else frozenset(tuple(sorted(e)) for e in graph)
    witness = _max_induced_matching(frozenset(edges))
    return len(witness), witness


def comb_matching_witness(n: int) -> tuple:
    """Every other tine: the tines at x_3, x_7, ..., x_{3 + 4 floor(n/2)}."""
    return tuple((2 + 4 * m, 3 + 4 * m) for m in range(n // 2 + 1))


def reg_bounds(n: int, t) -> tuple[int, int]:
    """Bounds on reg I(n,t): induced matching of in(I) plus one, and the smaller
    side of the bipartition of G_n^t."""
    t = parse_type_vector(n, t)
    size, _ = max_induced_matching(edges_of_ideal(initial_ideal(generator_polynomials(n, t))))
    return size + 1, reg_bounds_upper(n, t)


@dataclass
class InvariantReport:
    n: int
    t: tuple[int, ...]
    dim: int
    pdim: int | None
    reg_ring: int
    reg_ideal: int | None
    multiplicity: int
    koszul: bool
    cm_certified: bool
    induced_matching: tuple = field(default=())

    @property
    def fibonacci_index(self) -> int:
        return self.n + 3

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": bitstring(self.t),
            "dim": self.dim,
            "pdim": self.pdim,
            "reg_ring": self.reg_ring,
            "reg_ideal": self.reg_ideal,
            "multiplicity": self.multiplicity,
            "fibonacci_index": self.fibonacci_index,
            "koszul": self.koszul,
            "cm_certified": self.cm_certified,
            "witnesses": {"induced_matching": [list(e) for e in self.induced_matching]},
        }


def full_report(n: int, t, cert: CMCertificate | None = None) -> InvariantReport:
    t = parse_type_vector(n, t)
    basis = generator_polynomials(n, t)
    init = initial_ideal(basis)
    cert = cert or cm_certificate(n, t)
    dim = krull_dimension(init)
    numvars = 2 * n + 4
    multiplicity = cert.numerator.multiplicity(dim)
    if cert.holds and multiplicity != length(n):
        raise IntegrityError(f"n={n}: multiplicity {multiplicity} but Artinian length {length(n)}")
    size, witness = max_induced_matching(edges_of_ideal(init))
    lower, upper = size + 1, reg_bounds_upper(n, t)
    return InvariantReport(
        n=n,
        t=t,
        dim=dim,
        pdim=numvars - dim if cert.holds else None,
        reg_ring=hilbert_vector(n).top_degree,
        reg_ideal=lower if lower == upper else None,
        multiplicity=multiplicity,
        koszul=bool(cert.groebner) and all(b.degree() == 2 for b in basis),
        cm_certified=cert.holds,
        induced_matching=witness,
    )


def reg_bounds_upper(n: int, t) -> int:
    graph = build_graph(build_ladder(n, t))
    return min(len(graph.row_vertices), len(graph.col_vertices))


def fibonacci_multiplicity(n: int) -> int:
    return fibonacci(n + 3)
