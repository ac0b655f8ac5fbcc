"""Closed-form success probabilities and per-iteration costs for the
decoders, the rank-deficiency distribution, subspace counting, and the
asymptotic complexity-exponent engine.

Probabilities are returned as base-q logarithms (plain floats, -inf for
zero); exact rationals back the small-parameter variants used as cross
checks.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .codes import gv_relative_distance
from .gfq import gauss_binomial


@dataclass(frozen=True)
class CostReport:
    """Per-iteration success probability P (base-q log), iteration cost C
    (field operations) and the total work log_q(P^-1 C)."""

    success_prob: float
    iteration_cost: float
    total: float


@dataclass(frozen=True)
class AsymptoticParams:
    """Asymptotic regime: rate R, error fraction T = H_q^{-1}(1-R) and
    interleaving fraction L = T / gamma."""

    q: int
    R: float
    gamma: float

    def __post_init__(self):
        if not 0 < self.R < 1:
            raise DomainError("R must be in (0, 1)")
        if self.gamma <= 2:
            raise DomainError("gamma > 2 required")

    @property
    def T(self) -> float:
        return gv_relative_distance(self.R, self.q)

    @property
    def L(self) -> float:
        return self.T / self.gamma


@dataclass(frozen=True)
class ExponentPoint:
    """A sample (R, e(R, q)) of an asymptotic cost curve; for Stern the
    optimizing internal parameters (W', L') are attached."""

    R: float
    e: float
    optimizer_state: tuple[float, float] | None = None


# --- log-domain building blocks -----------------------------------------


def _logq_binom(n, k, q: int):
    """Base-q log of C(n, k), vectorized; -inf outside the domain."""
    n = np.asarray(n, dtype=float)
    k = np.asarray(k, dtype=float)
    with np.errstate(invalid="ignore"):
        out = (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)) / math.log(q)
    return np.where((k >= 0) & (k <= n), out, -np.inf)


def _logsumexp_q(terms: np.ndarray, q: int) -> float:
    m = float(np.max(terms))
    if m == -math.inf:
        return -math.inf
    lnq = math.log(q)
    return m + math.log(np.sum(np.exp((terms - m) * lnq))) / lnq


def log_lin_dep_prob(ell: int, i, q: int):
    """Base-q log of 1 - prod_{j=0}^{ell-1} (1 - q^(j-i)), vectorized
    over i.  Factors with q^(j-i) < q^-64 are treated as 1; below the
    double-precision floor the tail asymptote q^(ell-1-i) (q-1)/(q ...)
    sum is used instead.
    """
    i = np.atleast_1d(np.asarray(i, dtype=np.int64))
    lnq = math.log(q)
    M = 64
    g = np.zeros(M + 1)
    m = np.arange(1, M + 1, dtype=float)
    g[1:] = np.log1p(-np.power(float(q), -m))
    G = np.cumsum(g)
    hi = np.minimum(i, M)
    lo = np.minimum(np.maximum(i - ell, 0), M)
    S = G[hi] - G[lo]
    dep = -np.expm1(S)
    # sum_j q^(j-i) = q^(ell-1-i) * (1 - q^-ell) / (1 - 1/q)
    lc = math.log1p(-float(q) ** float(-min(ell, 512))) - math.log1p(-1.0 / q)
    fallback = (ell - 1 - i.astype(float)) + lc / lnq
    with np.errstate(divide="ignore"):
        out = np.where(dep > 1e-250, np.log(np.maximum(dep, 1e-300)) / lnq, fallback)
    return np.where(i < ell, 0.0, out)


# --- SD-based decoders ---------------------------------------------------


def rp_success_prob(n: int, k: int, t: int, q: int) -> float:
    """Base-q log of the per-iteration success probability of Random
    Prange: sum_v [C(t,v)(q-1)^v / q^t] C(n-k,v)/C(n,v)."""
    if not (0 <= t <= n and 0 <= k < n):
        raise DomainError("need 0 <= t <= n and 0 <= k < n")
    lnq = math.log(q)
    v = np.arange(0, t + 1)
    weight = _logq_binom(t, v, q) + v * math.log(q - 1) / lnq - t
    pv = _logq_binom(n - k, v, q) - _logq_binom(n, v, q)
    return _logsumexp_q(weight + pv, q)


def stern_iters_and_cost(n: int, k: int, ell: int, t: int, q: int, params) -> CostReport:
    """Expected iterations I and per-iteration cost C of Random Stern with
    per-weight parameters (w'_v, l'_v):

        I^-1 = sum_v [C(t,v)(q-1)^v/q^t]
               C((k+l'_v)/2, w'_v/2)^2 C(n-k-l'_v, v-w'_v) / C(n,v)
        C    = sum_v C((k+l'_v)/2, w'_v/2) q^(w'_v/2)
                   + C((k+l'_v)/2, w'_v/2)^2 q^(w'_v - l'_v)
    """
    params.validate(n, k, t)
    lnq = math.log(q)
    terms = np.full(t + 1, -np.inf)
    for v in range(0, t + 1):
        wp, lp = (0, 0) if v == 0 else params.at(v)
        weight = float(_logq_binom(t, v, q)) + v * math.log(q - 1) / lnq - t
        succ = (
            2 * float(_logq_binom((k + lp) // 2, wp // 2, q))
            + float(_logq_binom(n - k - lp, v - wp, q))
            - float(_logq_binom(n, v, q))
        )
        terms[v] = weight + succ
    log_p = _logsumexp_q(terms, q)
    cost = 0.0
    for v in range(1, t + 1):
        wp, lp = params.at(v)
        half = math.comb((k + lp) // 2, wp // 2)
        cost += half * q ** (wp / 2) + half**2 * q ** float(wp - lp)
    return CostReport(log_p, cost, -log_p + math.log(cost) / lnq)


# --- Interleaved Prange --------------------------------------------------


def ip_success_prob(n: int, k: int, ell: int, t: int, q: int) -> float:
    """Base-q log of the Interleaved Prange per-iteration success
    probability: sum_i hypergeometric weight of |J ^ T| = i times the
    probability that an ell x i uniform matrix has dependent rows."""
    if k + ell > n:
        raise DomainError("need k + ell <= n")
    if not 0 <= t <= n:
        raise DomainError("t outside [0, n]")
    i = np.arange(0, min(t, k + ell) + 1)
    weight = (
        _logq_binom(n - t, k + ell - i, q) + _logq_binom(t, i, q) - _logq_binom(n, k + ell, q)
    )
    return _logsumexp_q(weight + log_lin_dep_prob(ell, i, q), q)


def ip_success_lower_term(n: int, k: int, ell: int, t: int, q: int) -> float:
    """Base-q log of the single i = ell-1 summand used for the asymptotic
    lower bound: C(n-t, k+1) C(t, ell-1) / C(n, k+ell)."""
    if k + ell > n:
        raise DomainError("need k + ell <= n")
    return float(
        _logq_binom(n - t, k + 1, q) + _logq_binom(t, ell - 1, q) - _logq_binom(n, k + ell, q)
    )


def rank_deficiency_dist(k: int, ell: int, q: int) -> dict[int, Fraction]:
    """Distribution of the rank deficiency p of the (k+ell)-square
    submatrix when the error rows are independent: for p >= 1,

        P(p) = prod_j (q^k - q^j)/q^(k+ell) [ell p]_q [k k-p]_q q^((ell-p)(k-p))

    over uniformly random G_J; P(0) carries the complement so the values
    sum to one.
    """
    if k < 1 or ell < 1:
        raise DomainError("need k >= 1 and ell >= 1")
    base = Fraction(1)
    for j in range(k):
        base *= Fraction(q**k - q**j, q ** (k + ell))
    dist: dict[int, Fraction] = {}
    for p in range(1, min(k, ell) + 1):
        dist[p] = (
            base
            * gauss_binomial(ell, p, q)
            * gauss_binomial(k, k - p, q)
            * q ** ((ell - p) * (k - p))
        )
    dist[0] = 1 - sum(dist.values(), Fraction(0))
    return dict(sorted(dist.items()))


def subspace_intersection_count(n_dim: int, m: int, k_dim: int, d: int, q: int) -> int:
    """Number of k-dimensional subspaces W of F_q^n with dim(W ^ U) = d
    for a fixed m-dimensional U: [n-m k-d]_q [m d]_q q^((m-d)(k-d))."""
    if d > min(m, k_dim):
        raise DomainError("d exceeds min(m, k)")
    if k_dim - d > n_dim - m:
        raise DomainError("k - d exceeds n - m")
    return (
        gauss_binomial(n_dim - m, k_dim - d, q)
        * gauss_binomial(m, d, q)
        * q ** ((m - d) * (k_dim - d))
    )


def ip_iteration_cost(n: int, k: int, ell: int, q: int) -> float:
    """Per-iteration cost bound of Interleaved Prange:
    (k+ell)^3 + prod_j (1-q^(j-k)) * 16 sum_p q^(-p^2+p) * (k+ell)(n-k-ell)."""
    if k + ell > n:
        raise DomainError("need k + ell <= n")
    fr = 1.0
    for j in range(max(0, k - 64), k):
        fr *= 1 - float(q) ** (j - k)
    s = sum(float(q) ** (-p * p + p) for p in range(1, min(ell, 64) + 1))
    alpha = (k + ell) * (n - k - ell)
    return float(k + ell) ** 3 + fr * 16.0 * s * alpha


def ip_reencode_cost_exact(n: int, k: int, ell: int, q: int) -> Fraction:
    """Exact expected re-encoding work sum_p P(p) q^p alpha, before the
    Gaussian-binomial bound is applied; alpha = (k+ell)(n-k-ell)."""
    dist = rank_deficiency_dist(k, ell, q)
    alpha = (k + ell) * (n - k - ell)
    return sum(
        (prob * q**p * alpha for p, prob in dist.items() if p >= 1), Fraction(0)
    )


def cf_failure_estimate(n: int, k: int, ell: int, t: int, w: int, q: int) -> float:
    """The heuristic CF failure probability 1 - q^(-k-ell-t) C(t,w)/C(n,w),
    clamped to [0, 1].  An estimate only: the stacked generator is not a
    uniformly random matrix."""
    if not 0 <= w <= t <= n:
        raise DomainError("need 0 <= w <= t <= n")
    val = 1 - Fraction(math.comb(t, w), math.comb(n, w)) / Fraction(q) ** (k + ell + t)
    return min(1.0, max(0.0, float(val)))


# --- asymptotics ----------------------------------------------------------


def H_asym(F: float, G: float, q: int) -> float:
    """Asymptotic exponent of the binomial coefficient:
    H(F, G) = F log_q F - G log_q G - (F-G) log_q (F-G), with 0 log 0 = 0."""
    if G < 0 or F < G:
        raise DomainError("need 0 <= G <= F")
    lnq = math.log(q)

    def xlog(x: float) -> float:
        return x * math.log(x) / lnq if x > 0 else 0.0

    return xlog(F) - xlog(G) - xlog(F - G)


def _H_vec(F, G, q: int):
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    lnq = math.log(q)

    def xlog(x):
        return np.where(x > 0, x * np.log(np.maximum(x, 1e-300)), 0.0)

    return (xlog(F) - xlog(G) - xlog(F - G)) / lnq


def exponent_rp(params: AsymptoticParams) -> ExponentPoint:
    """Random Prange upper-bound exponent, evaluated at the most likely
    error fraction T(q-1)/q."""
    q = params.q
    x = params.T * (q - 1) / q
    e = H_asym(1.0, x, q) - H_asym(1 - params.R, x, q)
    return ExponentPoint(params.R, e)


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal-enough f on [a, b]."""
    gr = (math.sqrt(5) - 1) / 2
    c = b - gr * (b - a)
    d = a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def exponent_stern(
    params: AsymptoticParams, grid_step: float = 1e-3, refine_tol: float = 1e-6
) -> ExponentPoint:
    """Random Stern upper-bound exponent, minimized over the internal
    parameter fractions (W', L'):

        e = H(1, Tq) - 2 H((R+L')/2, W'/2) - H(1-R-L', Tq - W')
            + max{ H((R+L')/2, W'/2) + W'/2,
                   2 H((R+L')/2, W'/2) + W' - L' }

    with Tq = T(q-1)/q.  Coarse grid scan followed by coordinate-wise
    golden-section refinement.  W' = L' = 0 recovers Random Prange.
    """
    q, R = params.q, params.R
    Tq = params.T * (q - 1) / q

    def objective(W, L):
        W = np.asarray(W, dtype=float)
        L = np.asarray(L, dtype=float)
        h1 = _H_vec((R + L) / 2, W / 2, q)
        e = (
            _H_vec(1.0, Tq, q)
            - 2 * h1
            - _H_vec(np.maximum(1 - R - L, 0), np.maximum(Tq - W, 0), q)
            + np.maximum(h1 + W / 2, 2 * h1 + W - L)
        )
        feasible = (
            (W <= np.minimum(R + L, Tq) + 1e-15)
            & (Tq - W <= 1 - R - L + 1e-15)
            & (L <= 1 - R + 1e-15)
            & (W >= -1e-15)
            & (L >= -1e-15)
        )
        return np.where(feasible, e, np.inf)

    Ws = np.arange(0.0, min(Tq, 1.0) + grid_step, grid_step)
    Ls = np.arange(0.0, (1 - R) + grid_step, grid_step)
    W, L = np.meshgrid(Ws, Ls, indexing="ij")
    vals = objective(W, L)
    iw, il = np.unravel_index(int(np.argmin(vals)), vals.shape)
    wb, lb = float(W[iw, il]), float(L[iw, il])
    # coordinate-wise refinement around the best grid point
    for _ in range(40):
        w0 = wb
        a, b = max(0.0, wb - grid_step), min(Tq, wb + grid_step)
        wb, _ = _golden_max(lambda x: -float(objective(x, lb)), a, b, refine_tol)
        a, b = max(0.0, lb - grid_step), min(1 - R, lb + grid_step)
        lb, _ = _golden_max(lambda x: -float(objective(wb, x)), a, b, refine_tol)
        if abs(wb - w0) < refine_tol:
            break
    e = float(objective(wb, lb))
    e0 = exponent_rp(params).e  # W' = L' = 0 corner, in case the grid missed it
    if e0 <= e:
        return ExponentPoint(R, e0, (0.0, 0.0))
    return ExponentPoint(R, e, (wb, lb))


def exponent_ip(
    params: AsymptoticParams,
    include_enumeration_term: bool = False,
    tight: bool = False,
) -> ExponentPoint:
    """Interleaved Prange upper-bound exponent.

    The default is the reference bound obtained by keeping the single
    success-probability term at intersection fraction I = L:

        e = H(1, R+L) - H(1-T, R) - H(T, L).

    With ``tight=True`` the full sum over I is maximized (Laplace):

        e = H(1, R+L) - max_I [H(1-T, R+L-I) + H(T, I) + min(0, L-I)],

    which is the exact exponent of the success probability, never above
    the default bound, and strictly below the plain Prange exponent at
    every rate (the single-term bound crosses marginally above it at
    high rates, where I = L is far from the dominating term).

    ``include_enumeration_term`` adds min{H(R+L, R), L}; the published
    reference values are reproduced without it (the expected re-encoding
    work per iteration is polynomial), so it is off by default.
    """
    q, R, T, L = params.q, params.R, params.T, params.L
    if R + L >= 1:
        raise DomainError("need R + L < 1")
    if tight:
        lo = max(0.0, R + L - (1 - T))
        hi = min(T, R + L)

        def h(I: float) -> float:
            I = min(max(I, lo), hi)
            return H_asym(1 - T, R + L - I, q) + H_asym(T, I, q) + min(0.0, L - I)

        # h is concave (concave hypergeometric exponent plus a min of lines)
        _, best = _golden_max(h, lo, hi, 1e-12)
        best = max(best, h(min(max(L, lo), hi)))
        e = H_asym(1.0, R + L, q) - best
    else:
        e = H_asym(1.0, R + L, q) - H_asym(1 - T, R, q) - H_asym(T, L, q)
    if include_enumeration_term:
        e += min(H_asym(R + L, R, q), L)
    return ExponentPoint(R, e)


def simulated_exponent(alg: str, n: int, params: AsymptoticParams) -> ExponentPoint:
    """Finite-n cost exponent (1/n) log_q(P^-1 C) at k = floor(Rn),
    t = floor(Tn), ell = max(2, floor(Ln))."""
    if n < 1000:
        raise DomainError("n >= 1000 required for the finite-n evaluation")
    q, R = params.q, params.R
    k = int(R * n)
    t = int(params.T * n)
    ell = max(2, int(params.L * n))
    lnq = math.log(q)
    if alg == "ip":
        if k + ell > n:
            raise DomainError("k + ell > n at this rate")
        log_p = ip_success_prob(n, k, ell, t, q)
        cost = ip_iteration_cost(n, k, ell, q)
    elif alg == "rp":
        log_p = rp_success_prob(n, k, t, q)
        cost = float(n - k) ** 2 * (n + 1)
    else:
        raise DomainError(f"unknown algorithm {alg!r}")
    return ExponentPoint(R, (-log_p + math.log(cost) / lnq) / n)


def maximize_over_rate(curve, grid_step: float = 1e-3) -> tuple[float, float]:
    """argmax over R in (0, 1) of a rate -> exponent curve: grid scan plus
    golden-section refinement around the best grid point."""
    if grid_step > 1e-3 + 1e-12:
        raise DomainError("grid_step <= 1e-3 required")

    def safe(R: float) -> float:
        try:
            return float(curve(R))
        except DomainError:
            return -math.inf

    grid = np.arange(grid_step, 1.0, grid_step)
    vals = [safe(float(R)) for R in grid]
    i = int(np.argmax(vals))
    lo = float(grid[max(0, i - 1)])
    hi = float(grid[min(len(grid) - 1, i + 1)])
    r_star, e_star = _golden_max(safe, lo, hi, 1e-7)
    if vals[i] > e_star:
        return float(grid[i]), vals[i]
    return r_star, e_star
