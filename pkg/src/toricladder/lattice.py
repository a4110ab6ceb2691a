"""Join-meet ideals, the natural ladder lattice, and a search that refutes lattice realizations.

A quadratic binomial ``ab - cd`` is a standard generator of a lattice when one of its
monomials is an incomparable pair and the other is its join and meet.  The refuter
tries every way of reading each generator like that (which monomial is the
incomparable pair, which element of the other monomial is the join) and propagates
the order relations this forces until a contradiction appears or none is left.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError
from .family import Binomial, LadderGrid


class Contradiction(Exception):
    pass


# ---------------------------------------------------------------------------
# finite posets and lattices


class Poset:
    """Finite poset given by its elements and a reflexive order ``leq``."""

    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        size = len(self.elements)
        # up[i]: bitmask of elements >= element i
        self.up = [0] * size
        for i, a in enumerate(self.elements):
            for k, b in enumerate(self.elements):
                if i == k or leq(a, b):
                    self.up[i] |= 1 << k
        self.down = [sum(1 << i for i in range(size) if self.up[i] >> k & 1) for k in range(size)]
        for i in range(size):
            for k in range(i + 1, size):
                if self.up[i] >> k & 1 and self.up[k] >> i & 1:
                    raise InvalidInputError(f"{self.elements[i]} and {self.elements[k]} violate antisymmetry")
        for i in range(size):
            for k in self._members(self.up[i]):
                if self.up[k] & ~self.up[i]:
                    raise InvalidInputError("order relation is not transitive")

    @staticmethod
    def _members(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def leq(self, a, b) -> bool:
        return bool(self.up[self._index[a]] >> self._index[b] & 1)

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def _extreme(self, mask, toward):
        # the member of mask below (or above) all others, if there is one
        for k in self._members(mask):
            if mask & ~toward[k] == 0:
                return k
        return None

    def join(self, a, b):
        """Least upper bound, or None."""
        k = self._extreme(self.up[self._index[a]] & self.up[self._index[b]], self.up)
        return None if k is None else self.elements[k]

    def meet(self, a, b):
        k = self._extreme(self.down[self._index[a]] & self.down[self._index[b]], self.down)
        return None if k is None else self.elements[k]

    def incomparable_pairs(self):
        return [(a, b) for a, b in itertools.combinations(self.elements, 2) if not self.comparable(a, b)]


def is_lattice(p: Poset) -> bool:
    return all(p.join(a, b) is not None and p.meet(a, b) is not None for a, b in itertools.combinations(p.elements, 2))


def is_distributive(p: Poset) -> bool:
    """a ^ (b v c) == (a ^ b) v (a ^ c) over all triples; False for non-lattices."""
    if not is_lattice(p):
        return False
    join = lambda x, y: x if x == y else p.join(x, y)  # noqa: E731
    meet = lambda x, y: x if x == y else p.meet(x, y)  # noqa: E731
    return all(
        meet(a, join(b, c)) == join(meet(a, b), meet(a, c)) for a, b, c in itertools.product(p.elements, repeat=3)
    )


def join_meet_standard_generators(p: Poset) -> set[Binomial]:
    """One ``ab - (a v b)(a ^ b)`` per incomparable pair, dropping zero binomials."""
    if not is_lattice(p):
        raise InvalidInputError("poset is not a lattice")
    out = set()
    for a, b in p.incomparable_pairs():
        g = Binomial((a, b), (p.join(a, b), p.meet(a, b)))
        if g.pos != g.neg:
            out.add(g)
    return out


def natural_ladder_lattice(grid: LadderGrid) -> Poset:
    """Grid variables ordered by x >= y iff x is weakly above and weakly left of y."""
    pos = {v: rc for rc, v in grid.cells.items()}
    return Poset(sorted(pos), lambda x, y: pos[y][0] <= pos[x][0] and pos[y][1] <= pos[x][1])


# ---------------------------------------------------------------------------
# propagation state


class PosetState:
    """Strict partial-order constraints on a fixed element set, as bitmasks.

    ``above[i]`` holds the elements known to be strictly greater than element i.
    Join-meet facts (a, b, J, M) demand that J is the least upper bound of the
    incomparable pair {a, b} and M the greatest lower bound.
    """

    __slots__ = ("elements", "above", "below", "incomparable", "facts")

    def __init__(self, elements):
        self.elements = tuple(elements)
        size = len(self.elements)
        self.above = [0] * size
        self.below = [0] * size
        self.incomparable = [0] * size
        self.facts = []

    def copy(self) -> "PosetState":
        other = PosetState.__new__(PosetState)
        other.elements = self.elements
        other.above = list(self.above)
        other.below = list(self.below)
        other.incomparable = list(self.incomparable)
        other.facts = list(self.facts)
        return other

    def name(self, i) -> str:
        e = self.elements[i]
        return f"x{e}" if isinstance(e, int) else str(e)

    def related(self, i, k) -> bool:
        return bool(self.above[i] >> k & 1 or self.below[i] >> k & 1)

    def greater(self, i, k) -> bool:
        return bool(self.above[k] >> i & 1)

    def declare_incomparable(self, i, k):
        if i == k:
            raise Contradiction(f"{self.name(i)} cannot be incomparable to itself")
        if self.related(i, k):
            raise Contradiction(f"incomparable pair {{{self.name(i)}, {self.name(k)}}} is related")
        self.incomparable[i] |= 1 << k
        self.incomparable[k] |= 1 << i

    def add_greater(self, u, v) -> bool:
        """Record u > v with its transitive consequences; True if anything was new."""
        if u == v:
            raise Contradiction(f"{self.name(u)} > {self.name(u)}")
        if self.greater(u, v):
            return False
        if self.greater(v, u):
            raise Contradiction(f"antisymmetry: {self.name(u)} > {self.name(v)} and {self.name(v)} > {self.name(u)}")
        uppers = self.above[u] | 1 << u
        lowers = self.below[v] | 1 << v
        if uppers & lowers:
            k = (uppers & lowers).bit_length() - 1
            raise Contradiction(f"antisymmetry through {self.name(k)}")
        for p in Poset._members(uppers):
            if self.incomparable[p] & lowers:
                q = (self.incomparable[p] & lowers).bit_length() - 1
                raise Contradiction(f"incomparable pair {{{self.name(p)}, {self.name(q)}}} is related")
            self.below[p] |= lowers
        for q in Poset._members(lowers):
            self.above[q] |= uppers
        return True

    def add_fact(self, a, b, join, meet):
        """{a, b} incomparable with join and meet as given."""
        self.declare_incomparable(a, b)
        self.facts.append((a, b, join, meet))
        for u, v in ((join, a), (join, b), (a, meet), (b, meet)):
            self.add_greater(u, v)

    def propagate(self):
        """Apply the least-upper-bound and greatest-lower-bound rules to a fixpoint.

        Any common upper bound u of {a, b} other than the join J must satisfy u > J,
        and dually for lower bounds and the meet.
        """
        changed = True
        while changed:
            changed = False
            for a, b, join, meet in self.facts:
                for u in Poset._members(self.above[a] & self.above[b] & ~(1 << join)):
                    changed |= self.add_greater(u, join)
                for w in Poset._members(self.below[a] & self.below[b] & ~(1 << meet)):
                    changed |= self.add_greater(meet, w)

    def relations(self) -> list[tuple]:
        return [
            (self.elements[u], self.elements[v])
            for v in range(len(self.elements))
            for u in Poset._members(self.above[v])
        ]

    def to_json(self) -> dict:
        def label(e):
            return f"x{e}" if isinstance(e, int) else str(e)

        return {
            "elements": [label(e) for e in self.elements],
            "greater": sorted([label(u), label(v)] for u, v in self.relations()),
            "incomparable": sorted(
                [label(self.elements[i]), label(self.elements[k])]
                for i in range(len(self.elements))
                for k in Poset._members(self.incomparable[i])
                if i < k
            ),
            "join_meet": [
                {"pair": [label(self.elements[a]), label(self.elements[b])], "join": label(self.elements[j]),
                 "meet": label(self.elements[m])}
                for a, b, j, m in self.facts
            ],
        }


# ---------------------------------------------------------------------------
# orientation search


@dataclass(frozen=True)
class OrientationAssignment:
    """How one generator ``pos - neg`` reads as a standard generator.

    ``f == 0``: the positive monomial is the incomparable pair; ``f == 1``: the negative
    one is.  ``join`` picks which variable of the other monomial is the join.
    """

    f: int
    join: int

    def roles(self, g: Binomial):
        pair, other = (g.pos, g.neg) if self.f == 0 else (g.neg, g.pos)
        return pair, other[self.join], other[1 - self.join]


ORIENTATIONS = tuple(OrientationAssignment(f, j) for f in (0, 1) for j in (0, 1))


def _as_binomial(g) -> Binomial:
    if isinstance(g, Binomial):
        out = g
    else:
        pos, neg = g
        out = Binomial(tuple(pos), tuple(neg))
    if len(out.pos) != 2 or len(out.neg) != 2 or len(out.variables) != 4:
        raise InvalidInputError(f"{out} is not a quadratic binomial in four distinct variables")
    return out


@dataclass
class Problem:
    elements: tuple
    gens: tuple[Binomial, ...]
    forced: tuple[tuple[int, int], ...]  # index pairs that must be comparable

    @classmethod
    def build(cls, gens, forced_comparable=(), elements=None) -> "Problem":
        gens = tuple(_as_binomial(g) for g in gens)
        used = sorted(set().union(*(g.variables for g in gens)), key=str) if gens else []
        if elements is None:
            elements = used
        elements = tuple(elements)
        if not set(used) <= set(elements):
            raise InvalidInputError("generator variables missing from the element set")
        idx = {e: i for i, e in enumerate(elements)}
        pairs = []
        for a, b in forced_comparable:
            if a not in idx or b not in idx or a == b:
                raise InvalidInputError(f"bad comparable pair {{{a}, {b}}}")
            pairs.append(tuple(sorted((idx[a], idx[b]))))
        return cls(elements, gens, tuple(sorted(set(pairs))))

    def index(self, e) -> int:
        return self.elements.index(e)

    def apply(self, state: PosetState, k: int, o: OrientationAssignment):
        (a, b), join, meet = o.roles(self.gens[k])
        idx = {e: i for i, e in enumerate(self.elements)}
        state.add_fact(idx[a], idx[b], idx[join], idx[meet])
        state.propagate()


@dataclass(frozen=True)
class DeadEnd:
    """A pruned branch: orientation prefix, forced-pair decisions, reason and weight."""

    choices: tuple[OrientationAssignment, ...]
    decisions: tuple[tuple, ...]
    reason: str
    weight: Fraction

    def to_json(self) -> dict:
        return {
            "f": "".join(str(o.f) for o in self.choices),
            "join": "".join(str(o.join) for o in self.choices),
            "decisions": [list(d) for d in self.decisions],
            "reason": self.reason,
            "leaves": str(self.weight),
        }


@dataclass
class Survivor:
    choices: tuple[OrientationAssignment, ...]
    state: PosetState

    @property
    def f_vector(self) -> str:
        return "".join(str(o.f) for o in self.choices)


def _resolve_forced(problem: Problem, state: PosetState, choices, weight, dead, decisions=()):
    """Split on each unresolved must-be-comparable pair; return a surviving state or None."""
    for i, k in problem.forced:
        if state.related(i, k):
            continue
        for u, v in ((i, k), (k, i)):
            branch = state.copy()
            step = decisions + ((branch.name(u), ">", branch.name(v)),)
            try:
                branch.add_greater(u, v)
                branch.propagate()
            except Contradiction as exc:
                dead.append(DeadEnd(choices, step, str(exc), weight / 2))
                continue
            found = _resolve_forced(problem, branch, choices, weight / 2, dead, step)
            if found is not None:
                return found
        return None
    return state


def _search(problem: Problem, state: PosetState, choices, dead, stop_at_first, survivors):
    m = len(problem.gens)
    depth = len(choices)
    if depth == m:
        found = _resolve_forced(problem, state, choices, Fraction(1), dead)
        if found is not None:
            survivors.append(Survivor(choices, found))
        return bool(survivors) and stop_at_first
    for o in ORIENTATIONS:
        branch = state.copy()
        step = choices + (o,)
        try:
            problem.apply(branch, depth, o)
        except Contradiction as exc:
            dead.append(DeadEnd(step, (), str(exc), Fraction(4 ** (m - depth - 1))))
            continue
        if _search(problem, branch, step, dead, stop_at_first, survivors):
            return True
    return False


def _run_subtree(problem: Problem, prefix, stop_at_first):
    dead, survivors = [], []
    state = PosetState(problem.elements)
    try:
        for k, o in enumerate(prefix):
            problem.apply(state, k, o)
    except Contradiction as exc:
        dead.append(DeadEnd(tuple(prefix), (), str(exc), Fraction(4 ** (len(problem.gens) - len(prefix)))))
        return dead, survivors
    _search(problem, state, tuple(prefix), dead, stop_at_first, survivors)
    return dead, survivors


def explore(problem: Problem, stop_at_first: bool = False, workers: int = 1):
    """Exhaustive orientation search; returns (dead ends, survivors) in branch order.

    With ``workers > 1`` the subtrees below the first two generators run in separate
    processes and are merged back in branch order, so the result does not depend on
    the worker count.
    """
    split = min(2, len(problem.gens))
    prefixes = list(itertools.product(ORIENTATIONS, repeat=split))
    if workers > 1 and len(prefixes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_subtree, [problem] * len(prefixes), prefixes, [stop_at_first] * len(prefixes)))
    else:
        parts = []
        for prefix in prefixes:
            parts.append(_run_subtree(problem, prefix, stop_at_first))
            if stop_at_first and parts[-1][1]:
                break
    dead = [d for part, _ in parts for d in part]
    survivors = [s for _, part in parts for s in part]
    if stop_at_first:
        survivors = survivors[:1]
    return dead, survivors


def admissible_f_vectors(gens, forced_comparable=(), workers: int = 1) -> set[str]:
    """F-vectors (as bitstrings) for which some join choice survives propagation."""
    _, survivors = explore(Problem.build(gens, forced_comparable), workers=workers)
    return {s.f_vector for s in survivors}


def unmentioned_pairs(gens, elements) -> list[tuple]:
    """Pairs whose product is no monomial of any generator; in a lattice whose
    standard generators are exactly ``gens`` these must be comparable."""
    monomials = {frozenset(m) for g in gens for m in (g.pos, g.neg)}
    return [(a, b) for a, b in itertools.combinations(elements, 2) if frozenset((a, b)) not in monomials]


@dataclass
class Refuted:
    dead_ends: list[DeadEnd]
    branches: int

    verdict = "Refuted"

    @property
    def coverage(self) -> Fraction:
        return sum((d.weight for d in self.dead_ends), Fraction(0))

    @property
    def complete(self) -> bool:
        return self.coverage == self.branches

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "branches": self.branches,
            "coverage": str(self.coverage),
            "dead_ends": [d.to_json() for d in self.dead_ends],
        }


@dataclass
class Unrefuted:
    survivor: Survivor
    branches: int
    notes: dict = field(default_factory=dict)

    verdict = "Unrefuted"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "branches": self.branches,
            "f": self.survivor.f_vector,
            "join": "".join(str(o.join) for o in self.survivor.choices),
            "state": self.survivor.state.to_json(),
        }


def refute_lattice_realizability(gens, varset, workers: int = 1):
    """Search for a lattice on ``varset`` whose standard generators are ``gens`` up to sign.

    Refuted means every orientation branch hit a contradiction; Unrefuted carries one
    consistent state, which is a necessary condition only.
    """
    gens = [_as_binomial(g) for g in gens]
    elements = tuple(getattr(varset, "indices", varset))
    problem = Problem.build(gens, unmentioned_pairs(gens, elements), elements)
    dead, survivors = explore(problem, stop_at_first=True, workers=workers)
    branches = 4 ** len(gens)
    if survivors:
        return Unrefuted(survivors[0], branches)
    result = Refuted(dead, branches)
    if not result.complete:
        raise AssertionError(f"refutation covers {result.coverage} of {branches} branches")
    return result


# ---------------------------------------------------------------------------
# literal ladder patches: 2-minors of small ladders with letter variables


def _gens(*specs):
    return [Binomial(tuple(p), tuple(q)) for p, q in (s.split("-") for s in specs)]


PATCHES = {
    3: (_gens("bc-ad", "ce-af", "de-bf"), []),
    5: (
        _gens("bc-ad", "ce-af", "de-bf", "eg-bh", "fg-dh"),
        [("a", "g"), ("a", "h"), ("c", "g"), ("c", "h")],
    ),
    7: (
        _gens("bc-ad", "ce-af", "de-bf", "eg-bh", "fg-dh", "gi-dj", "hi-fj"),
        [("a", "g"), ("a", "h"), ("c", "g"), ("c", "h"), ("b", "i"), ("b", "j"), ("e", "i"), ("e", "j")],
    ),
    9: (
        _gens("bc-ad", "ce-af", "de-bf", "eg-bh", "fg-dh", "gi-dj", "hi-fj", "ik-fl", "jk-hl"),
        [
            ("a", "g"), ("a", "h"), ("c", "g"), ("c", "h"), ("b", "i"), ("b", "j"),
            ("e", "i"), ("e", "j"), ("d", "k"), ("d", "l"), ("g", "k"), ("g", "l"),
        ],
    ),
}


def relabel(gens, perm: str):
    """Apply a permutation in cycle notation such as "(ac)(bd)(ef)" to letter generators."""
    mapping = {}
    for cycle in perm.strip("()").split(")("):
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            mapping[a] = b
    return [Binomial(tuple(mapping.get(v, v) for v in g.pos), tuple(mapping.get(v, v) for v in g.neg)) for g in gens]
