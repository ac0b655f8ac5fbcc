"""Interleaved-code instances: the planted-error channel, the public
problem view handed to decoders, the reduction from classical syndrome
decoding, and solution verification.

Instance JSON layout (round-trip lossless):

    {"q": int, "n": int, "k": int, "ell": int, "t": int,
     "G": [[...], ...], "R": [[...], ...],
     # only with keep_secret:
     "E": [[...], ...], "M": [[...], ...], "T": [1-based positions]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DomainError, Infeasible
from .gfq import PrimeField
from .matq import ColumnSet, MatFq, column_weight, columns, solve, support
from .codes import LinearCode, parity_check, syndrome


@dataclass(frozen=True)
class IdInstance:
    """Public view of an interleaved decoding instance: find E of column
    weight <= t with every row of R - E in the row span of G."""

    G: MatFq
    R_mat: MatFq
    t: int
    ell: int
    _H: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.R_mat.cols != self.G.cols:
            raise DimensionMismatch("G and R blocklengths differ")
        if self.R_mat.rows != self.ell:
            raise DimensionMismatch("R must have ell rows")
        if not 0 <= self.t <= self.G.cols:
            raise DomainError(f"t={self.t} outside [0, n]")

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def field_q(self) -> PrimeField:
        return self.G.field

    @property
    def H(self) -> MatFq:
        if not self._H:
            self._H.append(parity_check(self.G))
        return self._H[0]


@dataclass(frozen=True)
class PlantedInstance:
    """An instance generated together with its hidden solution."""

    code: LinearCode
    ell: int
    t: int
    R_mat: MatFq
    E: MatFq
    M: MatFq
    T_supp: ColumnSet

    def __post_init__(self):
        if len(self.T_supp) != self.t:
            raise DomainError("|T| must equal t")
        if not support(self.E).issubset(self.T_supp):
            raise DomainError("E has non-zero columns outside T")

    def public(self) -> IdInstance:
        return IdInstance(self.code.G, self.R_mat, self.t, self.ell)


def plant_instance(code: LinearCode, ell: int, t: int, rng) -> PlantedInstance:
    """Plant a uniform instance: T uniform among size-t position sets,
    E_T uniform in F_q^(ell x t), M uniform, R = M G + E.

    Column weight of E can be below t since a planted column may draw the
    zero vector.
    """
    if t > code.n:
        raise DomainError(f"t={t} > n={code.n}")
    if ell < 1 or t < 0:
        raise DomainError("need ell >= 1 and t >= 0")
    q = code.field_q.q
    pos = np.sort(rng.choice(code.n, size=t, replace=False))
    e = np.zeros((ell, code.n), dtype=np.int64)
    e[:, pos] = rng.integers(0, q, size=(ell, t), dtype=np.int64)
    m = rng.integers(0, q, size=(ell, code.k), dtype=np.int64)
    E = MatFq(code.field_q, e)
    M = MatFq(code.field_q, m)
    R = (M @ code.G) + E
    return PlantedInstance(code, ell, t, R, E, M, ColumnSet(pos + 1, code.n))


@dataclass(frozen=True)
class SyndromeInstance:
    """Syndrome-form interleaved instance (H, S, t): find E of column
    weight <= t with H E^T = S^T."""

    H: MatFq
    S: MatFq
    t: int
    ell: int

    def is_solution(self, E_hat: MatFq) -> bool:
        if E_hat.rows != self.ell or E_hat.cols != self.H.cols:
            return False
        return column_weight(E_hat) <= self.t and syndrome(E_hat, self.H) == self.S

    def to_id_instance(self) -> IdInstance:
        """Equivalent generator-form instance: G spans the right kernel of
        H, R holds one particular solution per syndrome row.  Raises
        Infeasible when S is not even in the unrestricted solution space
        (the instance is a NO for every t)."""
        from .matq import left_null_space

        G = left_null_space(self.H.transpose())
        X = solve(self.H, self.S.transpose())
        return IdInstance(G, X.transpose(), self.t, self.ell)


def from_sd_instance(H: MatFq, s: MatFq, t: int, ell: int) -> SyndromeInstance:
    """Reduce a classical SD instance (H, s, t) to an interleaved one by
    stacking s into an ell-row syndrome matrix.

    Any solution row e of the interleaved instance satisfies e H^T = s,
    so it solves the original SD instance.
    """
    if s.rows != 1 or s.cols != H.rows:
        raise DimensionMismatch("s must be a 1 x (n-k) row vector")
    if ell < 1:
        raise DomainError("ell >= 1 required")
    S = MatFq(H.field, np.tile(s.a, (ell, 1)))
    return SyndromeInstance(H, S, t, ell)


def verify_solution(inst: IdInstance, E_hat: MatFq) -> bool:
    """True iff E_hat has column weight <= t and R - E_hat is row-wise a
    codeword (zero syndrome)."""
    if E_hat.rows != inst.ell or E_hat.cols != inst.n:
        raise DimensionMismatch("candidate has wrong shape")
    if column_weight(E_hat) > inst.t:
        return False
    return syndrome(inst.R_mat - E_hat, inst.H).is_zero()


def support_to_error(inst: IdInstance, U: ColumnSet) -> MatFq:
    """Complete a candidate support to a full error matrix.

    Solves H_U E_U^T = (R H^T)^T for all rows simultaneously; raises
    Infeasible when no error supported on U is consistent with R, which
    is how decoders reject false-positive supports.
    """
    if len(U) and U.indices[-1] > inst.n:
        raise DomainError("support outside [1, n]")
    S = syndrome(inst.R_mat, inst.H)
    if len(U) == 0:
        if S.is_zero():
            return MatFq.zeros(inst.field_q, inst.ell, inst.n)
        raise Infeasible("empty support but non-zero syndrome")
    HU = columns(inst.H, U)
    X = solve(HU, S.transpose())  # raises Infeasible on inconsistency
    e = np.zeros((inst.ell, inst.n), dtype=np.int64)
    e[:, U.zero_based()] = X.a.T
    return MatFq(inst.field_q, e)


# --- JSON round trip -----------------------------------------------------


def instance_to_json(inst: PlantedInstance | IdInstance, keep_secret: bool = False) -> str:
    planted = isinstance(inst, PlantedInstance)
    G = inst.code.G if planted else inst.G
    doc = {
        "q": G.field.q,
        "n": G.cols,
        "k": G.rows,
        "ell": inst.ell,
        "t": inst.t,
        "G": G.tolist(),
        "R": inst.R_mat.tolist(),
    }
    if keep_secret:
        if not planted:
            raise DomainError("no secret to store for a public instance")
        doc["E"] = inst.E.tolist()
        doc["M"] = inst.M.tolist()
        doc["T"] = list(inst.T_supp.indices)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def instance_from_json(text: str) -> PlantedInstance | IdInstance:
    doc = json.loads(text)
    F = PrimeField(doc["q"])
    G = MatFq(F, doc["G"])
    R = MatFq(F, doc["R"])
    if "E" in doc:
        code = LinearCode(doc["n"], doc["k"], F, G)
        return PlantedInstance(
            code,
            doc["ell"],
            doc["t"],
            R,
            MatFq(F, doc["E"]),
            MatFq(F, doc["M"]),
            ColumnSet(doc["T"], doc["n"]),
        )
    return IdInstance(G, R, doc["t"], doc["ell"])
