"""Generic decoders for interleaved codes.

All four decoders return a nonempty subset of the error support (plus the
completed error matrix when verification is on) or raise BudgetExhausted.
A brute-force oracle over all small supports backs the property tests.

With ``verify=True`` a candidate support is accepted only if
``support_to_error`` can complete it to an admissible error matrix, which
in practice means the candidate covers the full error support.  Monte
Carlo estimation of the per-iteration success probabilities runs with
``verify=False`` so that the counted event matches the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .errors import (
    BudgetExhausted,
    DomainError,
    Infeasible,
    NoErrorToFind,
    NoSolution,
    NoVerifiedCandidate,
    TooLarge,
)
from .interleave import IdInstance, support_to_error
from .matq import (
    ColumnSet,
    MatFq,
    _rref_inplace,
    columns,
    sample_superinformation_set,
    solve,
    support,
)
from .codes import syndrome


@dataclass(frozen=True)
class DecodeOutput:
    """A verified (or raw) decoding result."""

    support: ColumnSet
    iterations_used: int
    error_matrix: MatFq | None = None

    def __post_init__(self):
        if len(self.support) == 0:
            raise DomainError("output support must be nonempty")


@dataclass(frozen=True)
class SternParams:
    """Per-weight internal parameters (w'_v, l'_v) for v in [1, t].

    k + l'_v and w'_v must be even so the half-window combinatorics are
    well defined; missing weights default to (0, 0).
    """

    wprime: dict
    lprime: dict

    @classmethod
    def zeros(cls, t: int) -> "SternParams":
        return cls({v: 0 for v in range(1, t + 1)}, {v: 0 for v in range(1, t + 1)})

    def at(self, v: int) -> tuple[int, int]:
        return self.wprime.get(v, 0), self.lprime.get(v, 0)

    def validate(self, n: int, k: int, t: int):
        for v in range(1, t + 1):
            wp, lp = self.at(v)
            if not 0 <= lp <= n - k:
                raise DomainError(f"l'_{v}={lp} outside [0, n-k]")
            if not 0 <= wp <= min(k + lp, v):
                raise DomainError(f"w'_{v}={wp} outside [0, min(k+l', v)]")
            # the half-window split only exists for a non-trivial window
            if wp and ((k + lp) % 2 or wp % 2):
                raise DomainError(f"k+l'_{v} and w'_{v} must be even")


# --- shared helpers ------------------------------------------------------


def _nonzero_combo(rng, ell: int, q: int) -> np.ndarray:
    while True:
        x = rng.integers(0, q, size=ell, dtype=np.int64)
        if x.any():
            return x


def _projective_reps(basis: np.ndarray, q: int):
    """One representative per scalar class of the span of ``basis`` rows:
    coefficient vectors with leading coefficient 1, (q^p - 1)/(q - 1) of
    them, never q^p - 1."""
    p = basis.shape[0]
    for lead in range(p):
        tail = p - lead - 1
        for rest in product(range(q), repeat=tail):
            c = np.zeros(p, dtype=np.int64)
            c[lead] = 1
            if tail:
                c[lead + 1 :] = rest
            yield (c @ basis) % q


def _check_ready(inst: IdInstance) -> MatFq:
    """Shared degenerate-input handling; returns the row-wise syndrome."""
    S = syndrome(inst.R_mat, inst.H)
    if inst.t == 0 or S.is_zero():
        raise NoErrorToFind("received matrix is row-wise a codeword (or t = 0)")
    return S


def _finish(inst: IdInstance, U: ColumnSet, it: int, verify: bool) -> DecodeOutput | None:
    if not verify:
        return DecodeOutput(U, it, None)
    try:
        E = support_to_error(inst, U)
    except Infeasible:
        return None
    return DecodeOutput(support(E), it, E)


# --- Random Prange -------------------------------------------------------


def random_prange(
    inst: IdInstance, rng, budget: int = 10**7, verify: bool = True
) -> DecodeOutput:
    """Draw a fresh non-zero word in the row span of R each iteration and
    run one Prange step on it: pick an information set (equivalently an
    invertible redundancy set of H), re-encode, and accept a residual of
    weight in [1, t]."""
    if budget < 1:
        raise DomainError("budget >= 1 required")
    S = _check_ready(inst)
    n, k, q, t = inst.n, inst.k, inst.field_q.q, inst.t
    H = inst.H
    for it in range(1, budget + 1):
        x = _nonzero_combo(rng, inst.ell, q)
        s = (x @ S.a) % q
        # invertible redundancy set, rejection-sampled (not counted as
        # iterations; the closed form conditions on invertibility)
        for _ in range(1000):
            sel = np.sort(rng.choice(n, size=n - k, replace=False))
            aug = np.hstack([H.a[:, sel], s.reshape(-1, 1)]).astype(np.int64)
            rk, _ = _rref_inplace(aug, q, limit=n - k)
            if rk == n - k:
                break
        else:
            continue
        e_z = aug[:, -1]
        w = int(np.count_nonzero(e_z))
        if 1 <= w <= t:
            U = ColumnSet(sel[e_z != 0] + 1, n)
            out = _finish(inst, U, it, verify)
            if out is not None:
                return out
    raise BudgetExhausted(f"no solution in {budget} iterations")


# --- Random Stern --------------------------------------------------------


def _weighted_vectors(length: int, weight: int, q: int):
    """All vectors of the given length with exactly `weight` non-zero
    entries, values in F_q^*."""
    if weight == 0:
        yield np.zeros(length, dtype=np.int64)
        return
    for pos in combinations(range(length), weight):
        for vals in product(range(1, q), repeat=weight):
            c = np.zeros(length, dtype=np.int64)
            c[list(pos)] = vals
            yield c


def _stern_subiteration(H: np.ndarray, s: np.ndarray, v: int, wp: int, lp: int, q: int, rng):
    """One Stern iteration targeting exact error weight v: random column
    permutation, partial elimination to [I | *] on n-k-l' rows, two
    half-lists over the (k+l')-column window, collision on the l'
    remaining syndrome coordinates.  Returns an error vector or None.
    """
    nk, n = H.shape
    r0 = nk - lp
    win = n - r0  # = k + l'
    half = win // 2
    for _ in range(50):
        perm = rng.permutation(n)
        aug = np.hstack([H[:, perm], s.reshape(-1, 1)]).astype(np.int64)
        rk, _ = _rref_inplace(aug, q, limit=r0)
        if rk == r0:
            break
    else:
        return None
    A1 = aug[:r0, r0:n]
    b1 = aug[:r0, n]
    B = aug[r0:, r0:n]
    b2 = aug[r0:, n]
    B1, B2 = B[:, :half], B[:, half:]
    table: dict[bytes, list[np.ndarray]] = {}
    for c1 in _weighted_vectors(half, wp // 2, q):
        key = ((B1 @ c1) % q).tobytes()
        table.setdefault(key, []).append(c1)
    for c2 in _weighted_vectors(win - half, wp // 2, q):
        key = ((b2 - B2 @ c2) % q).tobytes()
        for c1 in table.get(key, ()):
            ew = np.concatenate([c1, c2])
            e_id = (b1 - A1 @ ew) % q
            if np.count_nonzero(e_id) == v - wp:
                e = np.zeros(n, dtype=np.int64)
                e[perm[:r0]] = e_id
                e[perm[r0:]] = ew
                return e
    return None


def random_stern(
    inst: IdInstance,
    params: SternParams | None,
    rng,
    budget: int = 10**7,
    verify: bool = True,
) -> DecodeOutput:
    """Random Stern: per iteration draw a non-zero word of the row span of
    R, then run one Stern iteration for every target weight v in [1, t]
    with that weight's internal parameters.  All-zero parameters
    degenerate to Prange acceptance."""
    if budget < 1:
        raise DomainError("budget >= 1 required")
    S = _check_ready(inst)
    n, k, q, t = inst.n, inst.k, inst.field_q.q, inst.t
    if params is None:
        params = SternParams.zeros(t)
    params.validate(n, k, t)
    H = inst.H.a
    for it in range(1, budget + 1):
        x = _nonzero_combo(rng, inst.ell, q)
        s = (x @ S.a) % q
        if not s.any():
            continue
        for v in range(1, t + 1):
            wp, lp = params.at(v)
            e = _stern_subiteration(H, s, v, wp, lp, q, rng)
            if e is None:
                continue
            U = ColumnSet(np.nonzero(e)[0] + 1, n)
            out = _finish(inst, U, it, verify)
            if out is not None:
                return out
    raise BudgetExhausted(f"no solution in {budget} iterations")


# --- CF-based decoding ---------------------------------------------------


def _lee_brickell_candidates(Gs: np.ndarray, q: int):
    """Codewords with message weight 1 or 2 over the systematic generator,
    one representative per scalar class."""
    r = Gs.shape[0]
    for i in range(r):
        yield Gs[i]
    for i in range(r):
        for j in range(i + 1, r):
            for c in range(1, q):
                yield (Gs[i] + c * Gs[j]) % q


def cf_decode(
    inst: IdInstance, w: int, rng, budget: int = 10**7, verify: bool = True
) -> DecodeOutput:
    """Reduce to low-weight codeword finding in the span of [G; R]:
    search that code for words of weight <= w, accumulate their supports
    and return the union once it completes to an admissible error.

    The span contains many low-weight words whose support is not inside
    the planted positions; those false positives fail support completion
    and are dropped.
    """
    if w < 1:
        raise DomainError("w >= 1 required")
    if budget < 1:
        raise DomainError("budget >= 1 required")
    n, k, q = inst.n, inst.k, inst.field_q.q
    if k + inst.ell >= n:
        raise DomainError("need k + ell < n")
    _check_ready(inst)
    gp = inst.G.a.copy() if inst.ell == 0 else np.vstack([inst.G.a, inst.R_mat.a])
    red = gp.copy()
    rk, _ = _rref_inplace(red, q)
    Gb = MatFq(inst.field_q, red[:rk])
    found: list[frozenset] = []
    for it in range(1, budget + 1):
        J = sample_superinformation_set(Gb, 0, rng)
        Gs = solve(columns(Gb, J), Gb).a  # systematic form on J
        new = False
        for y in _lee_brickell_candidates(Gs, q):
            wt = int(np.count_nonzero(y))
            if 1 <= wt <= w:
                sup = frozenset(np.nonzero(y)[0] + 1)
                if sup not in found:
                    found.append(sup)
                    new = True
        if not found or not new:
            continue
        if not verify:
            return DecodeOutput(ColumnSet(frozenset().union(*found), n), it, None)
        out = _cf_verify(inst, found, it)
        if out is not None:
            return out
    if found:
        raise NoVerifiedCandidate(f"{len(found)} candidate supports, none verified")
    raise BudgetExhausted(f"no weight-<= {w} codeword found in {budget} iterations")


def _cf_verify(inst: IdInstance, found: list, it: int) -> DecodeOutput | None:
    """Try the union of the accumulated supports, then leave-one-out
    unions (drops a single false positive), then singletons."""
    union = frozenset().union(*found)
    trials = [union]
    if len(found) > 1:
        trials += [frozenset().union(*(s for s in found if s is not skip)) for skip in found]
    trials += found
    seen = set()
    for cand in trials:
        if not cand or cand in seen:
            continue
        seen.add(cand)
        out = _finish(inst, ColumnSet(cand, inst.n), it, True)
        if out is not None:
            return out
    return None


# --- Interleaved Prange --------------------------------------------------


def interleaved_prange(
    inst: IdInstance, rng, budget: int = 10**7, verify: bool = True
) -> DecodeOutput:
    """Pick k+ell columns of [G; R] containing an information set of G;
    when the square submatrix is rank-deficient, re-encode one
    representative per scalar class of its left null space and accept any
    word of weight in [1, t]."""
    if budget < 1:
        raise DomainError("budget >= 1 required")
    n, k, ell, t, q = inst.n, inst.k, inst.ell, inst.t, inst.field_q.q
    gp = np.vstack([inst.G.a, inst.R_mat.a])
    S = _check_ready(inst)
    del S
    m = k + ell
    eye = np.eye(m, dtype=np.int64)
    for it in range(1, budget + 1):
        J = sample_superinformation_set(inst.G, ell, rng)
        aug = np.hstack([gp[:, J.zero_based()], eye])
        rk, _ = _rref_inplace(aug, q, limit=m)
        if rk == m:
            continue
        null_basis = aug[rk:, m:]
        for xvec in _projective_reps(null_basis, q):
            y = (xvec @ gp) % q
            wt = int(np.count_nonzero(y))
            if 1 <= wt <= t:
                U = ColumnSet(np.nonzero(y)[0] + 1, n)
                out = _finish(inst, U, it, verify)
                if out is not None:
                    return out
    raise BudgetExhausted(f"no solution in {budget} iterations")


# --- brute-force oracle --------------------------------------------------


def bruteforce_decoder(inst: IdInstance, max_supports: int = 1 << 22) -> DecodeOutput:
    """Exhaust all supports of size <= t in increasing size and return the
    first (hence minimum-weight) admissible solution.  Oracle scale only."""
    n, t = inst.n, inst.t
    if n > 16 or math.comb(n, min(t, n // 2)) > max_supports:
        raise TooLarge(f"support enumeration over n={n}, t={t} too large")
    tried = 0
    for u in range(0, t + 1):
        for pos in combinations(range(1, n + 1), u):
            tried += 1
            try:
                E = support_to_error(inst, ColumnSet(pos, n))
            except Infeasible:
                continue
            if E.is_zero():
                raise NoErrorToFind("received matrix is row-wise a codeword")
            return DecodeOutput(support(E), tried, E)
    raise NoSolution(f"no error of column weight <= {t} exists")
