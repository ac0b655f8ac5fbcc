"""Dense matrices over F_q and the exact linear-algebra kernels the
decoders rely on: reduced row echelon form, rank, left null space,
column extraction and super-information-set sampling.

Matrices are immutable values: every operation returns a fresh object
and never mutates its inputs.  RNG state is always passed explicitly.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, DomainError, Exhausted, IndexOutOfRange
from .gfq import PrimeField, field_inv


class ColumnSet:
    """A sorted set of 1-based column positions."""

    __slots__ = ("indices",)

    def __init__(self, indices: Iterable[int], n: int | None = None):
        idx = tuple(sorted(set(int(i) for i in indices)))
        if idx and idx[0] < 1:
            raise IndexOutOfRange(f"column index {idx[0]} < 1")
        if n is not None and idx and idx[-1] > n:
            raise IndexOutOfRange(f"column index {idx[-1]} > {n}")
        object.__setattr__(self, "indices", idx)

    def __setattr__(self, *a):
        raise AttributeError("ColumnSet is immutable")

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return i in set(self.indices)

    def __eq__(self, other):
        return isinstance(other, ColumnSet) and self.indices == other.indices

    def __hash__(self):
        return hash(self.indices)

    def __repr__(self):
        return f"ColumnSet({list(self.indices)})"

    def zero_based(self) -> np.ndarray:
        return np.array(self.indices, dtype=np.int64) - 1

    def union(self, other: "ColumnSet") -> "ColumnSet":
        return ColumnSet(self.indices + other.indices)

    def issubset(self, other: "ColumnSet") -> bool:
        return set(self.indices) <= set(other.indices)


class MatFq:
    """Dense row-major matrix over F_q.  Entries are canonical residues."""

    __slots__ = ("field", "a")

    def __init__(self, field: PrimeField, array):
        a = np.asarray(array, dtype=np.int64)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected 2-D array, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= field.q):
            raise DomainError("entries must be canonical residues in [0, q-1]")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "a", a)
        a.setflags(write=False)

    def __setattr__(self, *a):
        raise AttributeError("MatFq is immutable")

    # --- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "MatFq":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "MatFq":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def row_vector(cls, field: PrimeField, entries: Sequence[int]) -> "MatFq":
        return cls(field, np.asarray(entries, dtype=np.int64).reshape(1, -1))

    @classmethod
    def random(cls, field: PrimeField, rows: int, cols: int, rng) -> "MatFq":
        return cls(field, rng.integers(0, field.q, size=(rows, cols), dtype=np.int64))

    # --- shape --------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    # --- arithmetic ---------------------------------------------------
    def _check_field(self, other: "MatFq"):
        if self.field.q != other.field.q:
            raise DimensionMismatch("mixed fields")

    def __matmul__(self, other: "MatFq") -> "MatFq":
        self._check_field(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        return MatFq(self.field, (self.a @ other.a) % self.field.q)

    def __add__(self, other: "MatFq") -> "MatFq":
        self._check_field(other)
        if self.a.shape != other.a.shape:
            raise DimensionMismatch("shape mismatch")
        return MatFq(self.field, (self.a + other.a) % self.field.q)

    def __sub__(self, other: "MatFq") -> "MatFq":
        self._check_field(other)
        if self.a.shape != other.a.shape:
            raise DimensionMismatch("shape mismatch")
        return MatFq(self.field, (self.a - other.a) % self.field.q)

    def __neg__(self) -> "MatFq":
        return MatFq(self.field, (-self.a) % self.field.q)

    def __eq__(self, other):
        return (
            isinstance(other, MatFq)
            and self.field.q == other.field.q
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.field.q, self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"MatFq(q={self.field.q}, {self.a.tolist()})"

    def transpose(self) -> "MatFq":
        return MatFq(self.field, self.a.T.copy())

    def row(self, i: int) -> "MatFq":
        return MatFq(self.field, self.a[i : i + 1].copy())

    def stack(self, other: "MatFq") -> "MatFq":
        self._check_field(other)
        if self.cols != other.cols:
            raise DimensionMismatch("column count mismatch")
        return MatFq(self.field, np.vstack([self.a, other.a]))

    def is_zero(self) -> bool:
        return not self.a.any()

    def tolist(self):
        return self.a.tolist()


# --- elimination kernel ------------------------------------------------


def _rref_inplace(a: np.ndarray, q: int, limit: int | None = None):
    """Reduce ``a`` (mutable int64 array) to RREF in place.

    Pivots are searched only in the first ``limit`` columns (defaults to
    all), which lets callers carry augmented right-hand sides through the
    elimination.  Returns (rank, pivot column list, 0-based).
    """
    rows, cols = a.shape
    limit = cols if limit is None else limit
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = pow(int(a[r, c]), -1, q)
        a[r] = (a[r] * inv) % q
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % q
        pivots.append(c)
        r += 1
    return r, pivots


def rref(A: MatFq) -> tuple[MatFq, int, ColumnSet]:
    """Reduced row echelon form of A with its rank and pivot columns."""
    a = A.a.copy()
    rank, pivots = _rref_inplace(a, A.field.q)
    return MatFq(A.field, a), rank, ColumnSet([p + 1 for p in pivots], A.cols)


def rank(A: MatFq) -> int:
    a = A.a.copy()
    r, _ = _rref_inplace(a, A.field.q)
    return r


def left_null_space(A: MatFq) -> MatFq:
    """Basis (as rows) of {x : x A = 0}.

    Runs the elimination on [A | I] with pivoting restricted to the A
    part; the transform rows attached to zero rows of the RREF are the
    basis.  Returns a (rows(A) - rank(A)) x rows(A) matrix.
    """
    r, c = A.rows, A.cols
    aug = np.hstack([A.a, np.eye(r, dtype=np.int64)])
    rk, _ = _rref_inplace(aug, A.field.q, limit=c)
    return MatFq(A.field, aug[rk:, c:].copy())


def solve(A: MatFq, B: MatFq) -> MatFq:
    """One solution X of A X = B, or raise Infeasible.

    Free variables are set to zero, so the result is deterministic.
    """
    from .errors import Infeasible

    if A.rows != B.rows:
        raise DimensionMismatch(f"{A.rows} != {B.rows}")
    aug = np.hstack([A.a.copy(), B.a.copy()])
    rk, pivots = _rref_inplace(aug, A.field.q, limit=A.cols)
    # a nonzero row beyond the rank means an inconsistent system
    if aug[rk:, A.cols :].any():
        raise Infeasible("no solution to the linear system")
    x = np.zeros((A.cols, B.cols), dtype=np.int64)
    for i, p in enumerate(pivots):
        x[p] = aug[i, A.cols :]
    return MatFq(A.field, x)


def columns(A: MatFq, J: ColumnSet) -> MatFq:
    """Submatrix A_J with |J| columns in increasing index order."""
    if len(J) and J.indices[-1] > A.cols:
        raise IndexOutOfRange(f"column {J.indices[-1]} > {A.cols}")
    return MatFq(A.field, A.a[:, J.zero_based()].copy())


def support(A: MatFq) -> ColumnSet:
    """Indices (1-based) of the non-zero columns of A."""
    nz = np.nonzero(A.a.any(axis=0))[0]
    return ColumnSet(nz + 1, A.cols)


def column_weight(A: MatFq) -> int:
    """Number of non-zero columns of A."""
    return int(A.a.any(axis=0).sum())


def sample_superinformation_set(
    G: MatFq, extra: int, rng, max_tries: int = 1000
) -> ColumnSet:
    """Uniform set J of k+extra columns with rank(G_J) = k, by rejection
    sampling over uniform size-(k+extra) subsets.  A retry budget rather
    than an unbounded loop: exceeding it raises Exhausted.
    """
    k, n = G.rows, G.cols
    if extra < 0 or k + extra > n:
        raise DomainError(f"cannot pick {k + extra} of {n} columns")
    q = G.field.q
    for _ in range(max_tries):
        sel = np.sort(rng.choice(n, size=k + extra, replace=False))
        sub = G.a[:, sel].copy()
        r, _ = _rref_inplace(sub, q)
        if r == k:
            return ColumnSet(sel + 1, n)
    raise Exhausted(f"no rank-{k} column set found in {max_tries} tries")
