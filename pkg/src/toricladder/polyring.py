"""Sparse polynomials with rational coefficients under degrevlex.

The variable order is the order of ``VarSet.indices``: the first variable is the
largest (x_0 > x_2 > x_3 > ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import InvalidInputError

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class VarSet:
    indices: tuple[int, ...]
    _slot: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise InvalidInputError(f"repeated variable index in {self.indices}")
        if 1 in self.indices:
            raise InvalidInputError("variable index 1 is not part of any ring here")
        object.__setattr__(self, "_slot", {v: i for i, v in enumerate(self.indices)})

    def __len__(self):
        return len(self.indices)

    def slot(self, var: int) -> int:
        try:
            return self._slot[var]
        except KeyError:
            raise InvalidInputError(f"x{var} is not in {self.indices}") from None

    def monomial(self, *variables: int) -> "Monomial":
        """Product of the given variables (repeats allowed)."""
        exps = [0] * len(self.indices)
        for v in variables:
            exps[self.slot(v)] += 1
        return Monomial(self, tuple(exps))

    def one(self) -> "Monomial":
        return Monomial(self, (0,) * len(self.indices))

    def monomials_of_degree(self, d: int):
        for combo in combinations_with_replacement(self.indices, d):
            yield self.monomial(*combo)


class Monomial:
    __slots__ = ("varset", "exps", "degree", "_key", "_hash")

    def __init__(self, varset: VarSet, exps: tuple[int, ...]):
        self.varset = varset
        self.exps = exps
        self.degree = sum(exps)
        # larger key == larger in degrevlex: degree first, then the smaller exponent
        # on the last variable wins, scanning towards the first
        self._key = (self.degree, tuple(-e for e in reversed(exps)))
        self._hash = hash(exps)

    def _check(self, other: "Monomial"):
        if self.varset is not other.varset and self.varset != other.varset:
            raise InvalidInputError("monomials live over different variable sets")

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps and self.varset == other.varset

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        self._check(other)
        return self._key < other._key

    def __gt__(self, other):
        self._check(other)
        return self._key > other._key

    def __le__(self, other):
        return not self > other

    def __ge__(self, other):
        return not self < other

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.varset, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise InvalidInputError(f"{other} does not divide {self}")
        return Monomial(self.varset, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial(self.varset, tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    def is_coprime(self, other: "Monomial") -> bool:
        return not any(a and b for a, b in zip(self.exps, other.exps))

    def support(self) -> tuple[int, ...]:
        return tuple(v for v, e in zip(self.varset.indices, self.exps) if e)

    def variables(self) -> tuple[int, ...]:
        """Variables with multiplicity, e.g. x3^2*x5 -> (3, 3, 5)."""
        return tuple(v for v, e in zip(self.varset.indices, self.exps) for _ in range(e))

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exps)

    def __str__(self):
        parts = []
        for v, e in zip(self.varset.indices, self.exps):
            if e == 1:
                parts.append(f"x{v}")
            elif e > 1:
                parts.append(f"x{v}^{e}")
        return "*".join(parts) or "1"

    __repr__ = __str__


def degrevlex_compare(a: Monomial, b: Monomial) -> int:
    if a.varset != b.varset:
        raise InvalidInputError("cannot compare monomials over different variable sets")
    if a._key > b._key:
        return GREATER
    if a._key < b._key:
        return LESS
    return EQUAL


class Polynomial:
    """Immutable-by-convention map Monomial -> nonzero Fraction."""

    __slots__ = ("varset", "terms")

    def __init__(self, varset: VarSet, terms=None):
        self.varset = varset
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def from_binomial(cls, varset: VarSet, binomial) -> "Polynomial":
        """``binomial.pos - binomial.neg`` as a polynomial over ``varset``."""
        pos = varset.monomial(*binomial.pos)
        neg = varset.monomial(*binomial.neg)
        return cls(varset, {pos: 1}) - cls(varset, {neg: 1})

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Polynomial":
        return cls(m.varset, {m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Polynomial) and self.varset == other.varset and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0]._key, reverse=True)

    def lead_monomial(self) -> Monomial:
        if not self.terms:
            raise InvalidInputError("the zero polynomial has no leading term")
        return max(self.terms, key=lambda m: m._key)

    def lead_coefficient(self) -> Fraction:
        return self.terms[self.lead_monomial()]

    def degree(self) -> int:
        return max(m.degree for m in self.terms) if self.terms else -1

    def coefficients(self) -> list[Fraction]:
        return list(self.terms.values())

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return add(self, other)

    def __neg__(self) -> "Polynomial":
        return scale(self, -1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return add(self, scale(other, -1))

    def __str__(self):
        if not self.terms:
            return "0"
        text = ""
        for m, c in self.sorted_terms():
            mag = abs(c)
            body = str(mag) if m.degree == 0 else (str(m) if mag == 1 else f"{mag}*{m}")
            if not text:
                text = ("-" if c < 0 else "") + body
            else:
                text += f" {'-' if c < 0 else '+'} {body}"
        return text

    __repr__ = __str__


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.varset != g.varset:
        raise InvalidInputError("polynomials live over different variable sets")
    terms = dict(f.terms)
    for m, c in g.terms.items():
        s = terms.get(m, 0) + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    out = Polynomial(f.varset)
    out.terms = terms
    return out


def scale(f: Polynomial, c) -> Polynomial:
    c = Fraction(c)
    out = Polynomial(f.varset)
    if c:
        out.terms = {m: a * c for m, a in f.terms.items()}
    return out


def multiply_monomial(f: Polynomial, m: Monomial, c=1) -> Polynomial:
    c = Fraction(c)
    out = Polynomial(f.varset)
    if c:
        out.terms = {mm * m: a * c for mm, a in f.terms.items()}
    return out


def reduce(f: Polynomial, divisors: list[Polynomial]) -> Polynomial:
    """Normal form of ``f`` by multivariate division.

    At each step the current leading term is cancelled by the first divisor (in list
    order) whose leading monomial divides it; otherwise it moves to the remainder.
    """
    leads = [(g.lead_monomial(), g.lead_coefficient(), g) for g in divisors]
    p = dict(f.terms)
    remainder = {}
    while p:
        m = max(p, key=lambda mm: mm._key)
        c = p[m]
        for lm, lc, g in leads:
            if lm.divides(m):
                q, factor = m / lm, c / lc
                for gm, gc in g.terms.items():
                    key = gm * q
                    s = p.get(key, 0) - factor * gc
                    if s:
                        p[key] = s
                    else:
                        del p[key]
                break
        else:
            remainder[m] = c
            del p[m]
    out = Polynomial(f.varset)
    out.terms = remainder
    return out
