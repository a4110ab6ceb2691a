"""The Artinian reduction of R(n,t) by the linear sequence x_0, x_2 - x_3, ..., x_{2n+4}.

Modding out that sequence sets x_0 and x_{2n+4} to zero and identifies x_{2i} with
x_{2i+1}, leaving the ring k[x_3, x_5, ..., x_{2n+3}].
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .errors import IntegrityError, InvalidInputError
from .family import Binomial, j_sequence, parse_type_vector, standard_generators
from .groebner import GroebnerCheck, MonomialIdeal, initial_ideal, is_groebner
from .polyring import Monomial, Polynomial, VarSet


def hat_varset(n: int) -> VarSet:
    return VarSet(tuple(range(3, 2 * n + 4, 2)))


def hat_image(var: int, n: int) -> int | None:
    """Image of x_var after the reduction; None means the variable becomes zero."""
    if var == 0 or var == 2 * n + 4:
        return None
    return var + 1 if var % 2 == 0 else var


def _hat_polynomial(b: Binomial, n: int, varset: VarSet) -> Polynomial:
    out = Polynomial(varset)
    for mono, sign in ((b.pos, 1), (b.neg, -1)):
        image = [hat_image(v, n) for v in mono]
        if None not in image:
            out = out + Polynomial(varset, {varset.monomial(*image): sign})
    return out


@dataclass(frozen=True)
class HatGeneratorSet:
    n: int
    t: tuple[int, ...]
    generators: tuple[Polynomial, ...]
    J: tuple[int | None, ...]  # J_1..J_{2n+1}; None is the zero marker

    @property
    def varset(self) -> VarSet:
        return hat_varset(self.n)


def threshold_index(j: tuple[int, ...]) -> int:
    """Largest i >= 1 with j_{2i} = 0, or 0 when n = 0."""
    n = (len(j) - 1) // 2
    return max((i for i in range(1, n + 1) if j[2 * i - 1] == 0), default=0)


def hat_j_values(n: int, t) -> tuple[int | None, ...]:
    """J_1..J_{2n+1} from the case table on j_k and the threshold index.

    A zero j_k (which happens exactly for k = 1 and even k up to twice the
    threshold) gives the zero marker, even j_k > 0 moves to the next odd index and
    odd j_k is kept.  The last two entries belong to purely monomial generators.
    """
    j = j_sequence(n, t)
    top = threshold_index(j)
    out = []
    for k in range(1, 2 * n + 2):
        jk = j[k - 1]
        if k >= 2 * n:
            out.append(None)
        elif (k % 2 == 0 and k <= 2 * top) or k == 1:
            out.append(None)
        elif jk % 2 == 0:
            out.append(jk + 1)
        else:
            out.append(jk)
    return tuple(out)


def hat_reduce(n: int, t) -> HatGeneratorSet:
    t = parse_type_vector(n, t)
    varset = hat_varset(n)
    gens = tuple(_hat_polynomial(b, n, varset) for b in standard_generators(n, t))
    return HatGeneratorSet(n, t, gens, hat_j_values(n, t))


def hat_is_groebner(hat: HatGeneratorSet) -> GroebnerCheck:
    return is_groebner(list(hat.generators))


def hat_initial_ideal(hat: HatGeneratorSet) -> MonomialIdeal:
    return initial_ideal(list(hat.generators))


def expected_hat_initial(n: int) -> MonomialIdeal:
    """(x_3^2, x_{2i+1} x_{2i+3}, x_{2i+3}^2 : 1 <= i <= n)."""
    v = hat_varset(n)
    monos = [v.monomial(3, 3)]
    for i in range(1, n + 1):
        monos += [v.monomial(2 * i + 1, 2 * i + 3), v.monomial(2 * i + 3, 2 * i + 3)]
    return MonomialIdeal.from_monomials(v, monos)


def standard_basis(n: int, d: int) -> list[Monomial]:
    """Squarefree degree-d monomials in the odd variables x_3..x_{2n+3} whose indices
    are pairwise at least four apart."""
    if d < 0:
        raise InvalidInputError("degree must be nonnegative")
    v = hat_varset(n)
    picks = [
        c for c in itertools.combinations(v.indices, d) if all(b - a >= 4 for a, b in zip(c, c[1:]))
    ]
    return [v.monomial(*c) for c in picks]


def closed_form_dim(n: int, i: int) -> int:
    if n < 0 or i < 0:
        raise InvalidInputError("n and i must be nonnegative")
    if i == 0:
        return 1
    # the product only has a zero factor while i <= n + 2; beyond n/2 + 1 the
    # dimension vanishes regardless
    if 2 * i > n + 2:
        return 0
    num = prod(n + j - 2 * (i - 1) for j in range(1, i + 1))
    q, r = divmod(num, factorial(i))
    if r:
        raise IntegrityError(f"closed form not integral at n={n}, i={i}")
    return q


@lru_cache(maxsize=None)
def recursive_dim(n: int, i: int) -> int:
    """d_{n,i} from d_{n,i} = d_{n-1,i} + d_{n-2,i-1} and the n = 0, 1 rows."""
    if i == 0:
        return 1
    if n == 0:
        return 1 if i == 1 else 0
    if n == 1:
        return 2 if i == 1 else 0
    return recursive_dim(n - 1, i) + recursive_dim(n - 2, i - 1)


@dataclass(frozen=True)
class HilbertVector:
    n: int
    dims: tuple[int, ...]

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    @property
    def length(self) -> int:
        return sum(self.dims)

    def as_polynomial(self) -> list[int]:
        return list(self.dims)


def _enumerated_dims(n: int) -> tuple[int, ...]:
    dims = []
    d = 0
    while True:
        count = len(standard_basis(n, d))
        if count == 0:
            return tuple(dims)
        dims.append(count)
        d += 1


def hilbert_vector(n: int) -> HilbertVector:
    """Hilbert function of the reduction, agreed on by basis enumeration, the
    recursion and the closed form; IntegrityError if any two differ."""
    if n < 0:
        raise InvalidInputError("n must be nonnegative")
    counted = _enumerated_dims(n)
    span = len(counted) + 2
    counted = counted + (0,) * (span - len(counted))
    recursed = tuple(recursive_dim(n, i) for i in range(span))
    closed = tuple(closed_form_dim(n, i) for i in range(span))
    if not counted == recursed == closed:
        raise IntegrityError(f"n={n}: enumeration {counted}, recursion {recursed}, closed form {closed}")
    dims = list(counted)
    while dims[-1] == 0:
        dims.pop()
    return HilbertVector(n, tuple(dims))


def length(n: int) -> int:
    return hilbert_vector(n).length


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci_doubling(k: int) -> int:
    """F(k) by fast doubling: F(2m) = F(m)(2F(m+1) - F(m)), F(2m+1) = F(m)^2 + F(m+1)^2."""

    def pair(m):
        if m == 0:
            return 0, 1
        a, b = pair(m // 2)
        c, d = a * (2 * b - a), a * a + b * b
        return (d, c + d) if m % 2 else (c, d)

    return pair(k)[0]


def fibonacci_binet(k: int) -> int:
    """Binet's formula evaluated exactly in Z[sqrt 5].

    Writing (1 + sqrt5)^k = a + b sqrt5 gives (1 - sqrt5)^k = a - b sqrt5, so
    F(k) = 2b / 2^k.
    """
    a, b = 1, 0
    for _ in range(k):
        a, b = a + 5 * b, a + b
    q, r = divmod(2 * b, 2**k)
    if r:
        raise IntegrityError(f"Binet numerator not divisible at k={k}")
    return q


def hilbert_table_csv(max_n: int) -> str:
    """CSV of d_{n,i}: one row per n, one column per degree i."""
    vectors = [hilbert_vector(n) for n in range(max_n + 1)]
    width = max(len(v.dims) for v in vectors)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n"] + [f"i={i}" for i in range(width)])
    for v in vectors:
        writer.writerow([v.n] + list(v.dims) + [0] * (width - len(v.dims)))
    return buf.getvalue()
