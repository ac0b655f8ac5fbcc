"""Linear-code model: random code sampling, generator/parity-check
conversion, syndromes, a brute-force minimum distance oracle and the
Gilbert-Varshamov asymptotics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, RankDeficient, TooLarge
from .gfq import PrimeField
from .matq import MatFq, _rref_inplace, rref


@dataclass(frozen=True)
class LinearCode:
    """An [n, k]_q code given by a full-rank generator matrix G.

    The parity-check matrix is derived lazily and cached; it always
    corresponds to the original column order of G.
    """

    n: int
    k: int
    field_q: PrimeField
    G: MatFq
    _H: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.G.rows != self.k or self.G.cols != self.n:
            raise DimensionMismatch("G shape does not match (k, n)")
        if not 0 < self.k < self.n:
            raise DomainError("need 0 < k < n")

    @property
    def H(self) -> MatFq:
        if not self._H:
            self._H.append(parity_check(self.G))
        return self._H[0]

    @property
    def rate(self) -> float:
        return self.k / self.n


def parity_check(G: MatFq) -> MatFq:
    """Parity-check matrix H with rank n-k and G H^T = 0.

    G is row-reduced to systematic form on its pivot columns; the column
    permutation is undone so H matches the original column order.
    """
    k, n = G.rows, G.cols
    R, rk, pivots = rref(G)
    if rk < k:
        raise RankDeficient(f"rank {rk} < k = {k}")
    piv = pivots.zero_based()
    non_piv = np.setdiff1d(np.arange(n), piv)
    q = G.field.q
    # codeword c satisfies c_nonpiv = c_piv * A with A = R[:, nonpiv]
    h = np.zeros((n - k, n), dtype=np.int64)
    h[:, non_piv] = np.eye(n - k, dtype=np.int64)
    h[:, piv] = (-R.a[:, non_piv].T) % q
    return MatFq(G.field, h)


def random_code(n: int, k: int, field_q: PrimeField, rng) -> LinearCode:
    """Uniformly random [n, k]_q code: G is resampled until full rank."""
    if not 0 < k < n:
        raise DomainError("need 0 < k < n")
    q = field_q.q
    while True:
        g = rng.integers(0, q, size=(k, n), dtype=np.int64)
        r, _ = _rref_inplace(g.copy(), q)
        if r == k:
            return LinearCode(n, k, field_q, MatFq(field_q, g))


def syndrome(x: MatFq, H: MatFq) -> MatFq:
    """s = x H^T, row-wise; zero exactly on codewords."""
    if x.cols != H.cols:
        raise DimensionMismatch(f"length {x.cols} != blocklength {H.cols}")
    return x @ H.transpose()


def min_distance_bruteforce(code: LinearCode, budget: int = 1 << 24) -> int:
    """Exact minimum Hamming weight over all q^k - 1 non-zero codewords.

    Oracle scale only; raises TooLarge beyond the enumeration budget.
    """
    q, k, n = code.field_q.q, code.k, code.n
    total = q**k
    if total > budget:
        raise TooLarge(f"q^k = {total} exceeds budget {budget}")
    best = n + 1
    chunk = 1 << 14
    g = code.G.a
    for start in range(1, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        # mixed-radix digits of the message indices
        msgs = (idx[:, None] // q ** np.arange(k)) % q
        words = (msgs @ g) % q
        w = np.count_nonzero(words, axis=1).min()
        best = min(best, int(w))
    return best


def entropy_q(x: float, q: int) -> float:
    """q-ary entropy H_q(x) with the 0 log 0 = 0 convention."""
    if not 0 <= x <= 1:
        raise DomainError(f"x={x} outside [0, 1]")
    lq = math.log(q)
    out = 0.0
    if x > 0:
        out += x * math.log(q - 1) / lq - x * math.log(x) / lq
    if x < 1:
        out -= (1 - x) * math.log(1 - x) / lq
    return out


def gv_relative_distance(R: float, q: int, tol: float = 1e-12) -> float:
    """The unique delta in [0, (q-1)/q] with H_q(delta) = 1 - R, by bisection."""
    if not 0 <= R <= 1:
        raise DomainError(f"R={R} outside [0, 1]")
    target = 1 - R
    lo, hi = 0.0, (q - 1) / q
    for _ in range(200):
        if hi - lo < tol:
            break
        mid = (lo + hi) / 2
        if entropy_q(mid, q) < target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
