"""Field arithmetic and q-analog combinatorics."""

import math
from fractions import Fraction
from itertools import product

import pytest

from ildec.errors import DomainError, ZeroInverse
from ildec.gfq import (
    PrimeField,
    field_inv,
    gauss_binomial,
    is_prime,
    lin_dep_prob,
    log_binomial,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 101, 65521}
    for q in range(-3, 20):
        assert is_prime(q) == (q in primes)
    assert is_prime(65521)
    assert not is_prime(65535)


def test_prime_field_validation():
    PrimeField(2)
    PrimeField(65521)
    for bad in (0, 1, 4, 9, 15, (1 << 16) + 1):
        with pytest.raises(DomainError):
            PrimeField(bad)


@pytest.mark.parametrize("q", [2, 3, 7, 101])
def test_field_inv_all_elements(q):
    F = PrimeField(q)
    for a in range(1, q):
        assert (a * F.inv(a)) % q == 1
    with pytest.raises(ZeroInverse):
        F.inv(0)
    with pytest.raises(DomainError):
        field_inv(q, F)
    with pytest.raises(DomainError):
        field_inv(-1, F)
    assert F.neg(0) == 0
    assert all((a + F.neg(a)) % q == 0 for a in range(q))


def test_gauss_binomial_edges_and_known_values():
    for q in (2, 3, 5):
        for a in range(6):
            assert gauss_binomial(a, 0, q) == 1
            assert gauss_binomial(a, a, q) == 1
    # number of lines through the origin in F_2^2 is 3, in F_3^2 is 4
    assert gauss_binomial(2, 1, 2) == 3
    assert gauss_binomial(2, 1, 3) == 4
    assert gauss_binomial(4, 2, 2) == 35
    assert gauss_binomial(3, 1, 3) == 13


def test_gauss_binomial_recurrence_oracle():
    # [a b]_q = [a-1 b-1]_q + q^b [a-1 b]_q
    for q in (2, 3, 7):
        for a in range(1, 12):
            for b in range(1, a):
                lhs = gauss_binomial(a, b, q)
                rhs = gauss_binomial(a - 1, b - 1, q) + q**b * gauss_binomial(a - 1, b, q)
                assert lhs == rhs


def test_gauss_binomial_symmetry_and_errors():
    for q in (2, 5):
        for a in range(8):
            for b in range(a + 1):
                assert gauss_binomial(a, b, q) == gauss_binomial(a, a - b, q)
    with pytest.raises(DomainError):
        gauss_binomial(2, 3, 2)
    with pytest.raises(DomainError):
        gauss_binomial(-1, 0, 2)
    with pytest.raises(DomainError):
        gauss_binomial(3, 1, 1)


def _rank_mod(rows_in, q):
    """Independent rank oracle: fraction-free elimination over Python ints."""
    a = [list(r) for r in rows_in]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] % q), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, q)
        a[rank] = [(x * inv) % q for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c] % q:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("ell,i,q", [(1, 2, 2), (2, 2, 2), (2, 3, 2), (1, 2, 3), (2, 2, 3)])
def test_lin_dep_prob_exhaustive(ell, i, q):
    dep = sum(
        1
        for entries in product(range(q), repeat=ell * i)
        if _rank_mod([entries[r * i : (r + 1) * i] for r in range(ell)], q) < ell
    )
    assert lin_dep_prob(ell, i, q) == Fraction(dep, q ** (ell * i))


def test_lin_dep_prob_degenerate():
    assert lin_dep_prob(3, 2, 5) == 1  # more rows than columns
    assert lin_dep_prob(1, 0, 2) == 1
    assert lin_dep_prob(1, 2, 2) == Fraction(1, 4)
    with pytest.raises(DomainError):
        lin_dep_prob(0, 1, 2)
    with pytest.raises(DomainError):
        lin_dep_prob(1, -1, 2)


def test_log_binomial_matches_exact():
    for q in (2, 7):
        for n in (0, 1, 10, 300):
            for k in (0, n // 3, n):
                exact = math.log(math.comb(n, k)) / math.log(q) if math.comb(n, k) > 1 else 0.0
                assert log_binomial(n, k, q) == pytest.approx(exact, abs=1e-10)
    with pytest.raises(DomainError):
        log_binomial(3, 4, 2)
