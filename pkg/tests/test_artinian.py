from math import comb, prod, factorial

import pytest

from toricladder.artinian import (
    closed_form_dim,
    expected_hat_initial,
    fibonacci,
    fibonacci_binet,
    fibonacci_doubling,
    hat_image,
    hat_initial_ideal,
    hat_is_groebner,
    hat_j_values,
    hat_reduce,
    hat_varset,
    hilbert_table_csv,
    hilbert_vector,
    length,
    recursive_dim,
    standard_basis,
)
from toricladder.errors import InvalidInputError
from toricladder.family import all_type_vectors, j_sequence, standard_generators
from toricladder.groebner import standard_monomials


def test_example_reduction():
    hat = hat_reduce(2, "000")
    assert [str(g) for g in hat.generators] == ["x3^2", "x3*x5", "x5^2 - x3*x7", "x5*x7", "x7^2"]
    assert hat.J == (None, None, 3, None, None)
    assert hat_is_groebner(hat)
    assert str(hat_initial_ideal(hat)) == "(x3^2, x3*x5, x5^2, x5*x7, x7^2)"


def test_hat_image():
    assert hat_image(0, 3) is None and hat_image(10, 3) is None
    assert hat_image(2, 3) == 3 and hat_image(3, 3) == 3 and hat_image(8, 3) == 9


def j_from_substitution(n, t):
    """Oracle: read J_k off the reduced polynomial itself.

    The negative monomial of s_k is x_{j_k} times a variable whose image is known; a
    surviving binomial names J_k directly, anything else gets the zero marker.
    """
    out = []
    for g, b in zip(hat_reduce(n, t).generators, standard_generators(n, t)):
        if len(g.terms) == 2:
            out.append(hat_image(b.neg[0], n))
        else:
            out.append(None)
    return tuple(out)


@pytest.mark.parametrize("n", range(0, 9))
def test_j_table_matches_substitution(n):
    for t in all_type_vectors(n):
        assert hat_j_values(n, t) == j_from_substitution(n, t)


@pytest.mark.parametrize("n", range(0, 8))
def test_hat_groebner_and_initial(n):
    for t in all_type_vectors(n):
        hat = hat_reduce(n, t)
        assert hat_is_groebner(hat)
        assert hat_initial_ideal(hat) == expected_hat_initial(n)


@pytest.mark.parametrize("n", range(0, 8))
def test_standard_basis_is_standard_monomials(n):
    init = expected_hat_initial(n)
    for d in range(n // 2 + 3):
        ours = sorted(m.exps for m in standard_basis(n, d))
        assert ours == sorted(m.exps for m in standard_monomials(init, d))


def test_standard_basis_gaps():
    assert [str(m) for m in standard_basis(4, 2)] == ["x3*x7", "x3*x9", "x3*x11", "x5*x9", "x5*x11", "x7*x11"]
    assert [str(m) for m in standard_basis(4, 3)] == ["x3*x7*x11"]
    with pytest.raises(InvalidInputError):
        standard_basis(2, -1)


def test_base_case_rows():
    assert hilbert_vector(0).dims == (1, 1)
    assert hilbert_vector(1).dims == (1, 2)
    for n in range(2, 5):
        assert hilbert_vector(n).dims[:2] == (1, n + 1)


@pytest.mark.parametrize("n", range(0, 15))
def test_closed_form_is_a_binomial(n):
    # (1/i!) prod (n + j - 2(i-1)) is the falling factorial of n - i + 2 over i!
    for i in range(n + 4):
        expected = comb(n - i + 2, i) if n - i + 2 >= 0 else 0
        assert closed_form_dim(n, i) == expected == recursive_dim(n, i)


def test_literal_product_needs_clamp():
    # beyond n/2 + 1 the unclamped product can turn nonzero again
    n, i = 0, 3
    assert prod(n + j - 2 * (i - 1) for j in range(1, i + 1)) // factorial(i) == -1
    assert closed_form_dim(n, i) == 0


def test_vector_is_t_independent():
    for n in range(0, 7):
        vectors = set()
        for t in all_type_vectors(n):
            init = hat_initial_ideal(hat_reduce(n, t))
            vectors.add(tuple(len(standard_monomials(init, d)) for d in range(n // 2 + 2)))
        assert vectors == {hilbert_vector(n).dims}


def test_top_degree_and_examples():
    assert hilbert_vector(14).dims == (1, 15, 91, 286, 495, 462, 210, 36, 1)
    for n in range(15):
        assert hilbert_vector(n).top_degree == n // 2 + 1


def test_lengths():
    assert length(0) == 2 and length(1) == 3
    fib = [0, 1]
    while len(fib) < 40:
        fib.append(fib[-1] + fib[-2])
    for n in range(15):
        assert length(n) == fib[n + 3]
    for k in range(40):
        assert fibonacci(k) == fibonacci_doubling(k) == fibonacci_binet(k) == fib[k]


def test_csv_table():
    text = hilbert_table_csv(4)
    assert text.splitlines() == [
        "n,i=0,i=1,i=2,i=3",
        "0,1,1,0,0",
        "1,1,2,0,0",
        "2,1,3,1,0",
        "3,1,4,3,0",
        "4,1,5,6,1",
    ]


def test_bad_arguments():
    with pytest.raises(InvalidInputError):
        hilbert_vector(-1)
    with pytest.raises(InvalidInputError):
        closed_form_dim(-1, 0)
    assert hat_varset(2).indices == (3, 5, 7)
    assert j_sequence(2, "000") == (0, 0, 2, 0, 3)
