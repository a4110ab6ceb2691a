"""Ladder-like arrays L_n^t, their bipartite graphs G_n^t and the toric generators.

Variables are named by their integer index (``0, 2, 3, ..., 2n+4``); index 1 never
occurs.  Grid positions are 0-based ``(row, col)`` pairs.  A type vector ``t`` is a
tuple of bits with ``t[0]`` standing for t_1, so step ``k`` of the construction is
governed by ``t[k]``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from .errors import InvalidInputError


def variable_indices(n: int) -> tuple[int, ...]:
    """Edge variables of G_n^t in descending monomial-order precedence."""
    return (0,) + tuple(range(2, 2 * n + 5))


def parse_type_vector(n: int, t) -> tuple[int, ...]:
    """Normalise ``t`` (bitstring or iterable of 0/1) and check its length is n+1."""
    if n < 0:
        raise InvalidInputError(f"n must be nonnegative, got {n}")
    if isinstance(t, str):
        if set(t) - {"0", "1"}:
            raise InvalidInputError(f"type vector must be a bitstring, got {t!r}")
        bits = tuple(int(c) for c in t)
    else:
        bits = tuple(int(b) for b in t)
        if any(b not in (0, 1) for b in bits):
            raise InvalidInputError(f"type vector entries must be 0 or 1, got {bits}")
    if len(bits) != n + 1:
        raise InvalidInputError(f"type vector for n={n} needs {n + 1} bits, got {len(bits)}")
    return bits


def all_type_vectors(n: int):
    """Every t in F_2^{n+1}, in lexicographic order of the bit tuple."""
    return itertools.product((0, 1), repeat=n + 1)


def bitstring(t) -> str:
    return "".join(str(b) for b in t)


@dataclass(frozen=True)
class LadderGrid:
    n: int
    t: tuple[int, ...]
    rows: int
    cols: int
    cells: dict  # (row, col) -> variable index

    @property
    def position(self) -> dict:
        return {v: rc for rc, v in self.cells.items()}

    def row(self, r: int) -> list[int]:
        return [self.cells[r, c] for c in range(self.cols) if (r, c) in self.cells]

    def column(self, c: int) -> list[int]:
        return [self.cells[r, c] for r in range(self.rows) if (r, c) in self.cells]

    def as_matrix(self) -> list[list[int | None]]:
        return [[self.cells.get((r, c)) for c in range(self.cols)] for r in range(self.rows)]

    def check_invariants(self) -> None:
        """Raise AssertionError naming the first violated structural invariant."""
        n = self.n
        values = sorted(self.cells.values())
        assert values == list(variable_indices(n)), f"occupied variables {values}"
        assert self.rows == n // 2 + 2 and self.cols == (n + 1) // 2 + 2, "grid shape"
        for r in range(self.rows):
            line = self.row(r)
            assert len(line) >= 2, f"row {r} has fewer than two entries"
            assert line == sorted(line) and len(set(line)) == len(line), f"row {r} not increasing"
        for c in range(self.cols):
            line = self.column(c)
            assert len(line) >= 2, f"column {c} has fewer than two entries"
            assert line == sorted(line) and len(set(line)) == len(line), f"column {c} not increasing"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": bitstring(self.t),
            "rows": self.rows,
            "cols": self.cols,
            "cells": [{"r": r, "c": c, "var": v} for (r, c), v in sorted(self.cells.items())],
        }

    def render(self) -> str:
        width = max(len(f"x{v}") for v in self.cells.values())
        lines = []
        for r in range(self.rows):
            entries = [f"x{v}" if v is not None else "." for v in self.as_matrix()[r]]
            lines.append("  ".join(e.ljust(width) for e in entries).rstrip())
        return "\n".join(lines)


def build_ladder(n: int, t) -> LadderGrid:
    t = parse_type_vector(n, t)
    cells = {(0, 0): 0, (0, 1): 2, (1, 0): 3, (1, 1): 4}
    if n >= 1:
        cells[0, 2] = 5
        cells[1, 2] = 6
    for k in range(2, n + 1):
        rows, cols = k // 2 + 2, (k + 1) // 2 + 2
        choice = t[k]  # t_{k+1}
        if k % 2 == 0:
            # new bottom row; x_{2k+3} goes under the first/second entry of the row above
            prev = sorted(c for (r, c) in cells if r == rows - 2)
            cells[rows - 1, prev[choice]] = 2 * k + 3
            cells[rows - 1, cols - 1] = 2 * k + 4
        else:
            # new right column; x_{2k+3} goes right of the first/second entry of the column before
            prev = sorted(r for (r, c) in cells if c == cols - 2)
            cells[prev[choice], cols - 1] = 2 * k + 3
            cells[rows - 1, cols - 1] = 2 * k + 4
    return LadderGrid(n=n, t=t, rows=n // 2 + 2, cols=(n + 1) // 2 + 2, cells=cells)


def j_sequence(n: int, t) -> tuple[int, ...]:
    """Return (j_1, ..., j_{2n+1}) as a 0-based tuple (entry k-1 holds j_k)."""
    t = parse_type_vector(n, t)
    j = {1: 0}
    if n >= 1:
        j[2], j[3] = 0, 2
    for i in range(2, n + 1):
        if t[i] == 0:
            j[2 * i], j[2 * i + 1] = j[2 * i - 2], 2 * i - 1
        else:
            j[2 * i], j[2 * i + 1] = j[2 * i - 1], 2 * i
    return tuple(j[k] for k in range(1, 2 * n + 2))


def check_j_sequence(j: tuple[int, ...]) -> None:
    assert len(j) % 2 == 1
    n = (len(j) - 1) // 2
    assert j[0] == 0
    if n >= 1:
        assert j[1] == 0 and j[2] == 2
    for i in range(1, n + 1):
        assert j[2 * i - 1] <= 2 * i - 2, f"j_{2 * i} too large"
        assert j[2 * i] in (2 * i - 1, 2 * i), f"j_{2 * i + 1} out of range"
        if i >= 2:
            assert j[2 * i - 1] >= j[2 * i - 3], "even j-subsequence decreases"


@dataclass(frozen=True, order=True)
class Binomial:
    """``pos - neg`` with both monomials stored as sorted tuples of variable indices."""

    pos: tuple[int, ...]
    neg: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(sorted(self.pos)))
        object.__setattr__(self, "neg", tuple(sorted(self.neg)))

    @property
    def variables(self) -> set[int]:
        return set(self.pos) | set(self.neg)

    def negated(self) -> "Binomial":
        return Binomial(self.neg, self.pos)

    def unsigned(self) -> frozenset:
        """Sign-free identity: the unordered pair of monomials."""
        return frozenset((self.pos, self.neg))

    def to_json(self) -> dict:
        return {"pos": list(self.pos), "neg": list(self.neg)}

    def __str__(self) -> str:
        def mono(m):
            return "*".join(f"x{v}" for v in m) if m else "1"

        return f"{mono(self.pos)} - {mono(self.neg)}"


def standard_generators(n: int, t) -> list[Binomial]:
    """s_1, ..., s_{2n+1} assembled from the j-sequence."""
    j = j_sequence(n, t)
    gens = [Binomial((2, 3), (j[0], 4))]
    for i in range(1, n + 1):
        gens.append(Binomial((2 * i + 1, 2 * i + 3), (j[2 * i - 1], 2 * i + 4)))
        gens.append(Binomial((2 * i + 2, 2 * i + 3), (j[2 * i], 2 * i + 4)))
    return gens


def distinguished_minors(grid: LadderGrid) -> list[Binomial]:
    """All 2-minors of fully occupied 2x2 subarrays, oriented antidiagonal minus diagonal.

    The result is sorted into the s_k order: by largest variable, then by the smallest
    variable of the positive monomial.
    """
    cells = grid.cells
    minors = []
    for r1, r2 in itertools.combinations(range(grid.rows), 2):
        for c1, c2 in itertools.combinations(range(grid.cols), 2):
            quad = [(r1, c1), (r1, c2), (r2, c1), (r2, c2)]
            if all(q in cells for q in quad):
                a, b, c, d = (cells[q] for q in quad)
                minors.append(Binomial((b, c), (a, d)))
    minors.sort(key=lambda s: (max(s.neg), min(s.pos)))
    return minors


def generators_to_json(gens: list[Binomial]) -> list[dict]:
    return [g.to_json() for g in gens]


@dataclass(frozen=True)
class BipartiteGraph:
    row_vertices: tuple[str, ...]
    col_vertices: tuple[str, ...]
    edges: dict  # variable index -> (row vertex, col vertex)
    _adj: dict = field(default=None, compare=False, repr=False)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.row_vertices + self.col_vertices

    def adjacency(self) -> dict[str, set[str]]:
        if self._adj is None:
            adj = {v: set() for v in self.vertices}
            for a, b in self.edges.values():
                adj[a].add(b)
                adj[b].add(a)
            object.__setattr__(self, "_adj", adj)
        return self._adj

    def degrees(self) -> dict[str, int]:
        return {v: len(nb) for v, nb in self.adjacency().items()}

    def edge_between(self, u: str, v: str) -> int | None:
        for label, ends in self.edges.items():
            if set(ends) == {u, v}:
                return label
        return None

    def is_connected(self) -> bool:
        adj = self.adjacency()
        start = self.vertices[0]
        seen, stack = {start}, [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


def build_graph(grid: LadderGrid) -> BipartiteGraph:
    rows = tuple(f"r{i + 1}" for i in range(grid.rows))
    cols = tuple(f"c{i + 1}" for i in range(grid.cols))
    edges = {v: (rows[r], cols[c]) for (r, c), v in sorted(grid.cells.items(), key=lambda kv: kv[1])}
    return BipartiteGraph(rows, cols, edges)


def induced_cycles(g: BipartiteGraph, min_length: int = 4):
    """Yield every chordless cycle with at least ``min_length`` vertices, once each.

    Each cycle is grown from its smallest vertex (in ``g.vertices`` order) along
    induced paths; the closing vertex is the only one allowed to touch the start.
    """
    adj = g.adjacency()
    order = {v: i for i, v in enumerate(g.vertices)}

    def extend(path):
        last = path[-1]
        for w in adj[last]:
            if order[w] <= order[path[0]] or w in path:
                continue
            # w may touch only `last` among the interior path vertices
            if any(w in adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and path[0] in adj[w]:
                cycle = path + [w]
                # each cycle is found in both directions; keep one
                if order[cycle[1]] < order[cycle[-1]] and len(cycle) >= min_length:
                    yield tuple(cycle)
                continue
            yield from extend(path + [w])

    for s in g.vertices:
        yield from extend([s])


def is_chordal_bipartite(g: BipartiteGraph) -> bool:
    return next(induced_cycles(g, min_length=6), None) is None


@dataclass(frozen=True)
class FourCycle:
    """A 4-cycle as two opposite edge pairs (each a sorted pair of variable labels)."""

    first: tuple[int, int]
    second: tuple[int, int]

    def binomial(self) -> Binomial:
        return Binomial(self.first, self.second)


def four_cycles(g: BipartiteGraph) -> list[FourCycle]:
    adj = g.adjacency()
    label = {frozenset(ends): v for v, ends in g.edges.items()}
    found = set()
    for side in (g.row_vertices, g.col_vertices):
        for u, w in itertools.combinations(side, 2):
            common = sorted(adj[u] & adj[w])
            for a, b in itertools.combinations(common, 2):
                # cycle u-a-w-b-u; opposite edges are (ua, wb) and (aw, bu)
                p = tuple(sorted((label[frozenset((u, a))], label[frozenset((w, b))])))
                q = tuple(sorted((label[frozenset((a, w))], label[frozenset((b, u))])))
                found.add(tuple(sorted((p, q))))
    return [FourCycle(p, q) for p, q in sorted(found)]


def edge_map_vanishing(b: Binomial, g: BipartiteGraph) -> bool:
    """True iff b maps to zero when each edge is replaced by the product of its endpoints."""
    for v in b.variables:
        if v not in g.edges:
            raise InvalidInputError(f"x{v} is not an edge of the graph")

    def image(mono):
        return Counter(end for v in mono for end in g.edges[v])

    return image(b.pos) == image(b.neg)
