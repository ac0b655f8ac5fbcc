"""Prime-field arithmetic and q-analog combinatorics.

Conventions used throughout the package:

* field elements are canonical residues in ``[0, q-1]``,
* exact counts (binomials, Gaussian binomials) are Python ints,
* probabilities that must survive huge parameters are carried as base-q
  logarithms (plain floats, ``-inf`` for zero).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ZeroInverse


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_q for a prime q with 2 <= q <= 2^16.

    The bound on q keeps every product of two residues inside 64-bit
    intermediates, so matrix kernels can use a single reduction per
    fused multiply-add.
    """

    q: int

    def __post_init__(self):
        if not (2 <= self.q <= 1 << 16):
            raise DomainError(f"q={self.q} out of supported range [2, 2^16]")
        if not is_prime(self.q):
            raise DomainError(f"q={self.q} is not prime")

    def inv(self, a: int) -> int:
        return field_inv(a, self)

    def neg(self, a: int) -> int:
        return (-a) % self.q


def field_inv(a: int, field: PrimeField) -> int:
    """Multiplicative inverse of ``a`` in F_q."""
    q = field.q
    if not 0 <= a < q:
        raise DomainError(f"{a} is not a canonical residue mod {q}")
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    return pow(a, -1, q)


def gauss_binomial(a: int, b: int, q: int) -> int:
    """Exact Gaussian binomial [a b]_q: the number of b-dimensional
    subspaces of F_q^a.
    """
    if a < 0 or b < 0:
        raise DomainError("negative arguments")
    if b > a:
        raise DomainError(f"b={b} > a={a}")
    if q < 2:
        raise DomainError("q must be >= 2")
    b = min(b, a - b)  # symmetry keeps the product short
    num = 1
    den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def lin_dep_prob(ell: int, i: int, q: int) -> Fraction:
    """Probability that a uniform ell x i matrix over F_q has linearly
    dependent rows: 1 - prod_{j=0}^{ell-1} (1 - q^(j-i)).  Exact.
    """
    if ell < 1 or i < 0:
        raise DomainError("need ell >= 1 and i >= 0")
    if i < ell:
        return Fraction(1)
    prod = Fraction(1)
    for j in range(ell):
        prod *= 1 - Fraction(1, q ** (i - j))
    return 1 - prod


def log_binomial(n: int, k: int, q: int) -> float:
    """Base-q logarithm of C(n, k) via log-gamma; relative error <= 1e-12
    for n up to 1e7."""
    if k < 0 or n < 0 or k > n:
        raise DomainError(f"C({n},{k}) undefined")
    ln = math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
    return ln / math.log(q)
