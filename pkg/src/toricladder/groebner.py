"""Buchberger machinery and combinatorics of monomial ideals."""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import InvalidInputError
from .polyring import Monomial, Polynomial, VarSet, multiply_monomial, reduce


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        raise InvalidInputError("S-polynomial of a zero polynomial")
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = lf.lcm(lg)
    return multiply_monomial(f, lcm / lf, 1 / f.terms[lf]) - multiply_monomial(g, lcm / lg, 1 / g.terms[lg])


@dataclass(frozen=True)
class GroebnerCheck:
    """Outcome of a Buchberger-criterion check; falsy carries the failing pair."""

    is_groebner: bool
    pair: tuple[int, int] | None = None
    remainder: Polynomial | None = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.is_groebner


def is_groebner(basis: list[Polynomial]) -> GroebnerCheck:
    """Reduce every pairwise S-polynomial modulo ``basis`` (no criteria applied)."""
    if any(not b for b in basis):
        raise InvalidInputError("Groebner check needs nonzero polynomials")
    checked = 0
    for i, j in itertools.combinations(range(len(basis)), 2):
        r = reduce(s_polynomial(basis[i], basis[j]), basis)
        checked += 1
        if r:
            return GroebnerCheck(False, (i, j), r, checked)
    return GroebnerCheck(True, pairs_checked=checked)


def buchberger(gens: list[Polynomial]) -> list[Polynomial]:
    """Complete ``gens`` to a Groebner basis.

    Pairs are processed by smallest lcm degree, then by index pair; pairs with coprime
    leading monomials are skipped.  New elements are made monic and appended, so the
    input occupies the leading positions of the result.
    """
    basis = [g for g in gens if g]
    leads = [g.lead_monomial() for g in basis]
    queue = []

    def push_pairs(j):
        for i in range(j):
            if not leads[i].is_coprime(leads[j]):
                heapq.heappush(queue, (leads[i].lcm(leads[j]).degree, i, j))

    for j in range(len(basis)):
        push_pairs(j)
    while queue:
        _, i, j = heapq.heappop(queue)
        r = reduce(s_polynomial(basis[i], basis[j]), basis)
        if r:
            r = multiply_monomial(r, r.varset.one(), 1 / r.lead_coefficient())
            basis.append(r)
            leads.append(r.lead_monomial())
            push_pairs(len(basis) - 1)
    return basis


@dataclass(frozen=True)
class MonomialIdeal:
    varset: VarSet
    gens: tuple[Monomial, ...]

    @classmethod
    def from_monomials(cls, varset: VarSet, monomials) -> "MonomialIdeal":
        """Build the ideal with its minimal generators, sorted descending."""
        uniq = sorted(set(monomials), key=lambda m: m._key)
        minimal = [m for k, m in enumerate(uniq) if not any(o.divides(m) for o in uniq[:k])]
        return cls(varset, tuple(sorted(minimal, key=lambda m: m._key, reverse=True)))

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    def gen_set(self) -> frozenset:
        return frozenset(g.support() if g.is_squarefree() else g.variables() for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def initial_ideal(basis: list[Polynomial]) -> MonomialIdeal:
    if not basis:
        raise InvalidInputError("empty basis")
    return MonomialIdeal.from_monomials(basis[0].varset, (b.lead_monomial() for b in basis))


def standard_monomials(ideal: MonomialIdeal, d: int) -> list[Monomial]:
    found = [m for m in ideal.varset.monomials_of_degree(d) if not ideal.contains(m)]
    return sorted(found, key=lambda m: m._key, reverse=True)


class HilbertNumerator:
    """Integer polynomial K(t) with Hilb(S/I) = K(t) / (1 - t)^numvars."""

    def __init__(self, coeffs, numvars: int):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.numvars = numvars

    def __eq__(self, other):
        return isinstance(other, HilbertNumerator) and (self.coeffs, self.numvars) == (other.coeffs, other.numvars)

    def __repr__(self):
        return f"HilbertNumerator({list(self.coeffs)}, numvars={self.numvars})"

    def __call__(self, x):
        return sum(c * x**k for k, c in enumerate(self.coeffs))

    def series(self, up_to: int) -> list[int]:
        """Hilbert function values for degrees 0..up_to."""
        # 1/(1-t)^v has coefficients C(d+v-1, v-1)
        v = self.numvars
        return [
            sum(c * (comb(d - k + v - 1, v - 1) if v else int(d == k)) for k, c in enumerate(self.coeffs) if k <= d)
            for d in range(up_to + 1)
        ]

    def h_polynomial(self, codim: int) -> list[int]:
        """Divide K(t) by (1 - t)^codim exactly; raise if the division leaves a remainder."""
        coeffs = list(self.coeffs)
        for _ in range(codim):
            coeffs = divide_by_one_minus_t(coeffs)
        return coeffs

    def multiplicity(self, dim: int) -> int:
        return sum(self.h_polynomial(self.numvars - dim))


def poly_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a, b) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    return out


def divide_by_one_minus_t(coeffs) -> list[int]:
    """Exact quotient of an integer polynomial by (1 - t)."""
    if sum(coeffs) != 0:
        raise InvalidInputError("polynomial does not vanish at t = 1")
    # q_k = sum_{i<=k} c_i
    quotient = list(itertools.accumulate(coeffs))[:-1]
    return quotient or [0]


def trim(coeffs) -> tuple[int, ...]:
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _pivot(gens: tuple[tuple[int, ...], ...], policy: str) -> int | None:
    counts = Counter(slot for g in gens for slot, e in enumerate(g) if e)
    shared = [s for s, c in counts.items() if c >= 2]
    if not shared:
        return None
    if policy == "frequent":
        return min(shared, key=lambda s: (-counts[s], s))
    if policy == "last":
        return max(shared)
    raise InvalidInputError(f"unknown pivot policy {policy!r}")


def _minimalize(gens) -> tuple[tuple[int, ...], ...]:
    uniq = sorted(set(gens), key=lambda g: (sum(g), g))
    out = []
    for g in uniq:
        if not any(all(a <= b for a, b in zip(o, g)) for o in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _numerator(gens: tuple[tuple[int, ...], ...], policy: str) -> tuple[int, ...]:
    if not gens:
        return (1,)
    pivot = _pivot(gens, policy)
    if pivot is None:
        # pairwise coprime generators: product of (1 - t^deg)
        out = [1]
        for g in gens:
            out = poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return trim(out)
    x = tuple(int(s == pivot) for s in range(len(gens[0])))
    # K(I) = K(I + (x)) + t * K(I : x)
    with_x = _minimalize([g for g in gens if not g[pivot]] + [x])
    colon = _minimalize([g[:pivot] + (max(g[pivot] - 1, 0),) + g[pivot + 1 :] for g in gens])
    return trim(poly_add(_numerator(with_x, policy), (0,) + _numerator(colon, policy)))


def hilbert_numerator(ideal: MonomialIdeal, numvars: int | None = None, pivot: str = "frequent") -> HilbertNumerator:
    """Numerator of the Hilbert series of S/ideal over (1 - t)^numvars.

    Splits on a pivot variable shared by at least two generators until the generators
    are pairwise coprime.  ``pivot="frequent"`` takes the variable in most generators
    (ties: earliest in the order); ``pivot="last"`` takes the last shared variable.
    """
    if pivot not in ("frequent", "last"):
        raise InvalidInputError(f"unknown pivot policy {pivot!r}")
    if numvars is None:
        numvars = len(ideal.varset)
    if numvars != len(ideal.varset):
        raise InvalidInputError("numvars must match the ring of the ideal")
    gens = _minimalize(g.exps for g in ideal.gens)
    return HilbertNumerator(_numerator(gens, pivot), numvars)


def _hyperedges(ideal: MonomialIdeal) -> list[int]:
    masks = []
    for g in ideal.gens:
        if not g.is_squarefree():
            raise InvalidInputError(f"generator {g} is not squarefree")
        masks.append(sum(1 << s for s, e in enumerate(g.exps) if e))
    return masks


def min_vertex_cover(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Smallest set of variables meeting every generator, by subsets of increasing size."""
    edges = _hyperedges(ideal)
    supported = sorted({s for e in edges for s in range(len(ideal.varset)) if e >> s & 1})
    for k in range(len(supported) + 1):
        for combo in itertools.combinations(supported, k):
            mask = 0
            for s in combo:
                mask |= 1 << s
            if all(e & mask for e in edges):
                return tuple(ideal.varset.indices[s] for s in combo)
    raise AssertionError("unreachable: the full support is a cover")


def max_independent_set(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Largest set of variables containing no generator's support (branch and bound)."""
    edges = _hyperedges(ideal)
    nv = len(ideal.varset)
    best = [0]

    def grow(slot, chosen):
        if slot == nv:
            if chosen.bit_count() > best[0].bit_count():
                best[0] = chosen
            return
        if chosen.bit_count() + (nv - slot) <= best[0].bit_count():
            return
        take = chosen | 1 << slot
        if not any(e & take == e for e in edges):
            grow(slot + 1, take)
        grow(slot + 1, chosen)

    grow(0, 0)
    return tuple(ideal.varset.indices[s] for s in range(nv) if best[0] >> s & 1)


@lru_cache(maxsize=None)
def _cover_dimension(ideal: MonomialIdeal) -> int:
    return len(ideal.varset) - len(min_vertex_cover(ideal))


def krull_dimension(ideal: MonomialIdeal, numvars: int | None = None) -> int:
    """dim S/ideal for a squarefree monomial ideal: numvars minus the minimum cover."""
    if numvars is not None and numvars != len(ideal.varset):
        raise InvalidInputError("numvars must match the ring of the ideal")
    _hyperedges(ideal)
    return _cover_dimension(ideal)


def krull_dimension_independent(ideal: MonomialIdeal) -> int:
    """Same quantity as ``krull_dimension`` through a maximum independent set."""
    return len(max_independent_set(ideal))
