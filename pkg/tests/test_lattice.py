import itertools

import pytest

from toricladder.errors import InvalidInputError
from toricladder.family import Binomial, build_ladder, standard_generators, variable_indices
from toricladder.lattice import (
    PATCHES,
    Contradiction,
    Poset,
    PosetState,
    Problem,
    admissible_f_vectors,
    explore,
    is_distributive,
    is_lattice,
    join_meet_standard_generators,
    natural_ladder_lattice,
    refute_lattice_realizability,
    relabel,
    unmentioned_pairs,
)


def poset_from_covers(elements, covers):
    """Reflexive-transitive closure of (lower, upper) cover pairs."""
    up = {e: {e} for e in elements}
    changed = True
    while changed:
        changed = False
        for lo, hi in covers:
            new = up[hi] - up[lo]
            if new:
                up[lo] |= new
                changed = True
        for e in elements:
            for f in list(up[e]):
                if not up[f] <= up[e]:
                    up[e] |= up[f]
                    changed = True
    return Poset(elements, lambda a, b: b in up[a])


DIAMOND = poset_from_covers("0abt", [("0", "a"), ("0", "b"), ("a", "t"), ("b", "t")])
PENTAGON = poset_from_covers("0abct", [("0", "a"), ("a", "b"), ("b", "t"), ("0", "c"), ("c", "t")])
M3 = poset_from_covers("0abct", [("0", "a"), ("0", "b"), ("0", "c"), ("a", "t"), ("b", "t"), ("c", "t")])
BOWTIE = poset_from_covers("abcd", [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def test_poset_examples():
    assert is_lattice(DIAMOND) and is_distributive(DIAMOND)
    assert DIAMOND.join("a", "b") == "t" and DIAMOND.meet("a", "b") == "0"
    assert is_lattice(PENTAGON) and not is_distributive(PENTAGON)
    assert is_lattice(M3) and not is_distributive(M3)
    # a and b have two minimal upper bounds
    assert not is_lattice(BOWTIE)
    chain = poset_from_covers("abc", [("a", "b"), ("b", "c")])
    assert is_lattice(chain) and join_meet_standard_generators(chain) == set()


def test_poset_rejects_non_orders():
    with pytest.raises(InvalidInputError):
        Poset("ab", lambda x, y: True)
    with pytest.raises(InvalidInputError):
        Poset("abc", lambda x, y: (x, y) in {("a", "b"), ("b", "c")})


def test_diamond_generator():
    assert join_meet_standard_generators(DIAMOND) == {Binomial(("a", "b"), ("t", "0"))}
    with pytest.raises(InvalidInputError):
        join_meet_standard_generators(BOWTIE)


def test_natural_lattice_smallest():
    gens = join_meet_standard_generators(natural_ladder_lattice(build_ladder(0, "0")))
    assert gens == {Binomial((2, 3), (0, 4))}


@pytest.mark.parametrize("n", range(0, 7))
def test_natural_lattice_realizes_ladder(n):
    t = "1" * (n + 1)
    lattice = natural_ladder_lattice(build_ladder(n, t))
    assert is_lattice(lattice) and is_distributive(lattice)
    ours = {g.unsigned() for g in join_meet_standard_generators(lattice)}
    assert ours == {s.unsigned() for s in standard_generators(n, t)}


def test_natural_order_misses_other_types():
    lattice = natural_ladder_lattice(build_ladder(5, "111110"))
    ours = {g.unsigned() for g in join_meet_standard_generators(lattice)}
    assert ours != {s.unsigned() for s in standard_generators(5, "111110")}


# --- propagation rules, one at a time ---------------------------------------


def test_transitivity():
    s = PosetState("abc")
    s.add_greater(0, 1)
    s.add_greater(1, 2)
    assert s.greater(0, 2)


def test_antisymmetry():
    s = PosetState("abc")
    s.add_greater(0, 1)
    s.add_greater(1, 2)
    with pytest.raises(Contradiction, match="antisymmetry"):
        s.add_greater(2, 0)
    with pytest.raises(Contradiction):
        s.add_greater(1, 1)


def test_incomparable_pair_cannot_become_related():
    s = PosetState("abc")
    s.declare_incomparable(0, 2)
    s.add_greater(0, 1)
    with pytest.raises(Contradiction, match="incomparable"):
        s.add_greater(1, 2)
    t = PosetState("ab")
    t.add_greater(0, 1)
    with pytest.raises(Contradiction):
        t.declare_incomparable(0, 1)


def test_sandwich_rule():
    # ab - JM read as {a, b} incomparable with join J, meet M
    s = PosetState("abJM")
    s.add_fact(0, 1, 2, 3)
    assert s.greater(2, 0) and s.greater(2, 1) and s.greater(0, 3) and s.greater(1, 3) and s.greater(2, 3)


def test_join_rule():
    # another upper bound u of {a, b} must sit above the join
    s = PosetState("abJMu")
    s.add_fact(0, 1, 2, 3)
    s.add_greater(4, 0)
    s.add_greater(4, 1)
    s.propagate()
    assert s.greater(4, 2)


def test_meet_rule():
    s = PosetState("abJMl")
    s.add_fact(0, 1, 2, 3)
    s.add_greater(0, 4)
    s.add_greater(1, 4)
    s.propagate()
    assert s.greater(3, 4)


def test_join_rule_contradiction():
    # an upper bound strictly below the join is impossible
    s = PosetState("abJMu")
    s.add_fact(0, 1, 2, 3)
    s.add_greater(2, 4)
    s.add_greater(4, 0)
    s.add_greater(4, 1)
    with pytest.raises(Contradiction):
        s.propagate()


def test_unmentioned_pairs():
    gens = [Binomial(("b", "c"), ("a", "d"))]
    assert unmentioned_pairs(gens, "abcd") == [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
    non_lattice = standard_generators(5, "111110")
    pairs = unmentioned_pairs(non_lattice, variable_indices(5))
    for pair in [(0, 7), (0, 8), (3, 7), (3, 8), (2, 9), (2, 10), (5, 9), (5, 10), (4, 11), (4, 12), (7, 11),
                 (7, 12), (10, 13), (10, 14)]:
        assert pair in pairs


# --- literal ladder patches -------------------------------------------------

EXPECTED = {
    3: {"000", "001", "011", "111", "110", "100"},
    5: {"00000", "11100", "11011", "00111"},
    7: {"0000000", "0011100"},
    9: {"000000000"},
}


def flips(bits, mapping):
    """Apply a map written like "1-i,1-j,1-k,m,l" to a bitstring."""
    names = "ijklmno"[: len(bits)]
    value = dict(zip(names, map(int, bits)))
    out = []
    for part in mapping.split(","):
        out.append(1 - value[part[2]] if part.startswith("1-") else value[part])
    return "".join(map(str, out))


RELABELINGS = [
    (3, "(ac)(bd)(ef)", "1-i,1-j,1-k"),
    (5, "(ac)(bd)(ef)", "1-i,1-j,1-k,m,l"),
    (5, "(be)(df)(gh)", "j,i,1-k,1-l,1-m"),
    (5, "(ah)(cg)(bf)", "m,l,k,j,i"),
    (7, "(be)(df)(gh)", "j,i,1-k,1-l,1-m,o,n"),
]


@pytest.mark.parametrize("size", sorted(PATCHES))
def test_patch_admissible_sets(size):
    gens, forced = PATCHES[size]
    assert admissible_f_vectors(gens, forced) == EXPECTED[size]


def test_patch_impossible_cases():
    assert "010" not in admissible_f_vectors(*PATCHES[3])
    five = admissible_f_vectors(*PATCHES[5])
    for case in ("00001", "01110", "00011"):
        assert case not in five


@pytest.mark.parametrize("size,perm,stated", RELABELINGS)
def test_relabelings(size, perm, stated):
    gens, forced = PATCHES[size]
    moved = relabel(gens, perm)
    # the permutation only permutes the generators (up to sign) and the forced pairs
    index = {g.unsigned(): k for k, g in enumerate(gens)}
    assert {g.unsigned() for g in moved} == set(index)
    moved_forced = {frozenset(b.pos) for b in relabel([Binomial(p, p) for p in forced], perm)}
    assert moved_forced == {frozenset(p) for p in forced}
    # induced map on F: generator k of the moved list is +-generator sigma(k)
    sigma = [index[g.unsigned()] for g in moved]
    flip = [int(g != gens[sigma[k]]) for k, g in enumerate(moved)]
    for bits in map("".join, itertools.product("01", repeat=size)):
        induced = "".join(str(int(bits[sigma[k]]) ^ flip[k]) for k in range(size))
        assert induced == flips(bits, stated)
    found = admissible_f_vectors(gens, forced)
    assert {flips(f, stated) for f in found} == found


def test_single_generator():
    assert admissible_f_vectors([Binomial(("b", "c"), ("a", "d"))]) == {"0", "1"}
    result = refute_lattice_realizability([Binomial(("b", "c"), ("a", "d"))], "abcd")
    assert result.verdict == "Unrefuted"


def test_malformed_generators():
    with pytest.raises(InvalidInputError):
        admissible_f_vectors([Binomial(("a", "a"), ("b", "c"))])
    with pytest.raises(InvalidInputError):
        admissible_f_vectors([Binomial(("a",), ("b",))])
    with pytest.raises(InvalidInputError):
        refute_lattice_realizability([Binomial((2, 3), (0, 4))], (0, 2, 3))


# --- full refutation ----------------------------------------------------------


def test_non_lattice_refuted():
    result = refute_lattice_realizability(standard_generators(5, "111110"), variable_indices(5))
    assert result.verdict == "Refuted"
    assert result.branches == 4**11 and result.coverage == 4**11 and result.complete
    assert all(d.reason for d in result.dead_ends)


@pytest.mark.parametrize("n", range(0, 6))
def test_ladder_type_unrefuted(n):
    t = "1" * (n + 1)
    result = refute_lattice_realizability(standard_generators(n, t), variable_indices(n))
    assert result.verdict == "Unrefuted"
    # the surviving state is consistent with the natural order or its reverse
    lattice = natural_ladder_lattice(build_ladder(n, t))
    greater = result.survivor.state.relations()
    assert all(lattice.leq(v, u) for u, v in greater) or all(lattice.leq(u, v) for u, v in greater)


def test_parallel_search_matches_serial():
    problem = Problem.build(standard_generators(5, "111110"), unmentioned_pairs(
        standard_generators(5, "111110"), variable_indices(5)), variable_indices(5))
    serial = explore(problem, workers=1)
    parallel = explore(problem, workers=2)
    assert serial == parallel
    a = refute_lattice_realizability(standard_generators(5, "111110"), variable_indices(5), workers=2)
    assert a.to_json() == refute_lattice_realizability(standard_generators(5, "111110"), variable_indices(5)).to_json()
