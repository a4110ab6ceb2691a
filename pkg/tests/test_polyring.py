from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.orderings import grevlex

from toricladder.errors import InvalidInputError
from toricladder.polyring import (
    EQUAL,
    GREATER,
    LESS,
    Monomial,
    Polynomial,
    VarSet,
    degrevlex_compare,
    multiply_monomial,
    reduce,
)

V = VarSet((0, 2, 3, 4, 5))
exps = st.tuples(*[st.integers(0, 3)] * len(V))
monos = exps.map(lambda e: Monomial(V, e))


def naive_degrevlex(a, b):
    """Oracle from the definition: higher degree wins; on a tie the last nonzero
    entry of a - b is negative for the larger monomial."""
    if a.degree != b.degree:
        return GREATER if a.degree > b.degree else LESS
    diff = [x - y for x, y in zip(a.exps, b.exps)]
    for d in reversed(diff):
        if d:
            return GREATER if d < 0 else LESS
    return EQUAL


@given(monos, monos)
def test_order_matches_definition_and_sympy(a, b):
    assert degrevlex_compare(a, b) == naive_degrevlex(a, b)
    ka, kb = grevlex(a.exps), grevlex(b.exps)
    assert (a < b) == (ka < kb) and (a > b) == (ka > kb)


@given(monos, monos)
def test_totality(a, b):
    assert sum([a < b, a == b, a > b]) == 1


@given(monos, monos, monos)
def test_multiplicative(a, b, c):
    if a < b:
        assert a * c < b * c
    assert (a * c) / c == a


@given(monos, monos, monos)
def test_transitive(a, b, c):
    if a < b and b < c:
        assert a < c


@given(monos)
def test_one_is_least(a):
    assert V.one() <= a


def test_variable_precedence():
    x = {v: V.monomial(v) for v in V.indices}
    assert x[0] > x[2] > x[3] > x[4] > x[5]
    # not lex: the monomial with less of the last variable wins
    assert V.monomial(2, 4) > V.monomial(0, 5)
    assert V.monomial(3, 3) > V.monomial(2, 4)


def test_varset_checks():
    with pytest.raises(InvalidInputError):
        VarSet((0, 1, 2))
    with pytest.raises(InvalidInputError):
        VarSet((2, 2))
    with pytest.raises(InvalidInputError):
        degrevlex_compare(V.monomial(0), VarSet((0, 2)).monomial(0))
    with pytest.raises(InvalidInputError):
        V.monomial(9)


@given(monos, monos)
def test_lcm_and_divides(a, b):
    m = a.lcm(b)
    assert a.divides(m) and b.divides(m)
    assert a.is_coprime(b) == (m == a * b)


polys = st.dictionaries(monos, st.integers(-3, 3), max_size=5).map(lambda d: Polynomial(V, d))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=4)] * len(V))


def evaluate(f, point):
    total = Fraction(0)
    for m, c in f.terms.items():
        term = c
        for x, e in zip(point, m.exps):
            term *= x**e
        total += term
    return total


@given(polys, polys, points)
def test_arithmetic_by_evaluation(f, g, p):
    assert evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p)
    assert evaluate(f - g, p) == evaluate(f, p) - evaluate(g, p)
    assert evaluate(-f, p) == -evaluate(f, p)


@given(polys, monos, points)
def test_monomial_multiple_by_evaluation(f, m, p):
    assert evaluate(multiply_monomial(f, m, 3), p) == 3 * evaluate(f, p) * evaluate(Polynomial.monomial(m), p)


@given(polys, st.lists(polys.filter(bool), min_size=1, max_size=3))
def test_division_remainder(f, divisors):
    r = reduce(f, divisors)
    leads = [g.lead_monomial() for g in divisors]
    # no remainder term is divisible by a leading monomial
    assert not any(lm.divides(m) for m in r.terms for lm in leads)


def test_reduce_example():
    f = Polynomial(V, {V.monomial(2, 2, 3): 1})
    g = Polynomial(V, {V.monomial(2, 3): 1, V.monomial(0, 4): -1})
    assert str(reduce(f, [g])) == "x0*x2*x4"


def test_printing_and_leads():
    f = Polynomial(V, {V.monomial(2, 3): 1, V.monomial(0, 4): -1, V.one(): Fraction(1, 2)})
    assert str(f) == "x2*x3 - x0*x4 + 1/2"
    assert f.lead_monomial() == V.monomial(2, 3) and f.degree() == 2
    assert str(V.monomial(3, 3, 5)) == "x3^2*x5"
    assert Polynomial(V) == 0
    with pytest.raises(InvalidInputError):
        Polynomial(V).lead_monomial()
