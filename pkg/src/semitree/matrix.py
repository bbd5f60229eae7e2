"""Dense square matrices over a semiring and the vectors they act on.

Entry ``(i, j)`` is the weight of the edge ``i -> j`` of the associated
digraph.  Indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .algebra import RealSemiring, Semiring
from .errors import AlgebraError, AlgebraMismatch, DimensionMismatch


@dataclass(frozen=True)
class SquareMatrix:
    algebra: Semiring
    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrix must have at least one row")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch(f"row {i + 1} has {len(row)} entries, expected {n}")
        validate = self.algebra.validate
        rows = tuple(tuple(validate(x) for x in row) for row in rows)
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_array(cls, algebra: RealSemiring, array) -> "SquareMatrix":
        return cls(algebra, np.asarray(array, dtype=float).tolist())

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def to_array(self) -> np.ndarray:
        if not isinstance(self.algebra, RealSemiring):
            raise AlgebraError(f"{self.algebra.kind} has no numeric array form")
        return np.array(self.entries, dtype=float)

    def trailing(self, start: int) -> "SquareMatrix":
        """Submatrix on states ``start, ..., n-1``."""
        return SquareMatrix(self.algebra, [r[start:] for r in self.entries[start:]])

    def permuted(self, perm: Sequence[int]) -> "SquareMatrix":
        """Relabel states so that new state ``k`` is old state ``perm[k]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError(f"{list(perm)!r} is not a permutation of 0..{self.n - 1}")
        e = self.entries
        return SquareMatrix(self.algebra, [[e[p][q] for q in perm] for p in perm])

    def map(self, f) -> "SquareMatrix":
        return SquareMatrix(self.algebra, [[f(x) for x in row] for row in self.entries])


@dataclass(frozen=True)
class RstVector:
    algebra: Semiring
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.algebra.validate(x) for x in self.w))

    def __len__(self):
        return len(self.w)

    def __getitem__(self, i):
        return self.w[i]

    def __iter__(self):
        return iter(self.w)

    def is_zero(self) -> bool:
        return all(self.algebra.is_zero(x) for x in self.w)

    def eq(self, other: "RstVector") -> bool:
        _check_same(self.algebra, other.algebra)
        if len(self) != len(other):
            raise DimensionMismatch("vectors differ in length")
        return all(self.algebra.eq(x, y) for x, y in zip(self.w, other.w))

    def scaled(self, c) -> "RstVector":
        return RstVector(self.algebra, [self.algebra.mul(c, x) for x in self.w])

    def normalized(self) -> list[float]:
        """Classical probability normalisation ``w / sum(w)``."""
        if self.algebra.kind != "classical-nonneg":
            raise AlgebraError("normalisation is only defined for classical-nonneg")
        total = sum(self.w)
        if total == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return [x / total for x in self.w]


def _check_same(a: Semiring, b: Semiring):
    if a != b:
        raise AlgebraMismatch(f"cannot combine {a.descriptor()} with {b.descriptor()}")


def transpose_apply(A: SquareMatrix, w: RstVector) -> RstVector:
    """``A^T w``: component ``j`` is the sum over ``i`` of ``w_i a_ij``."""
    _check_same(A.algebra, w.algebra)
    if len(w) != A.n:
        raise DimensionMismatch(f"vector of length {len(w)} against {A.n}x{A.n} matrix")
    alg, n = A.algebra, A.n
    out = [alg.sum(alg.mul(w[i], A[i, j]) for i in range(n)) for j in range(n)]
    return RstVector(alg, out)


def row_offdiag_sum(A: SquareMatrix, i: int, suffix: bool = False):
    """Sum of the off-diagonal entries of row ``i``.

    With ``suffix=True`` only columns ``j > i`` are included, which is the
    quantity state reduction divides by.
    """
    if not 0 <= i < A.n:
        raise IndexError(f"row {i} out of range for n={A.n}")
    cols = range(i + 1, A.n) if suffix else (j for j in range(A.n) if j != i)
    return A.algebra.sum(A[i, j] for j in cols)


def is_stochastic(A: SquareMatrix) -> bool:
    alg = A.algebra
    return all(alg.eq(alg.sum(row), alg.one) for row in A.entries)


def first_row_without_offdiag(A: SquareMatrix):
    """Index of the first row whose off-diagonal entries are all zero, else None."""
    alg = A.algebra
    for i, row in enumerate(A.entries):
        if all(alg.is_zero(x) for j, x in enumerate(row) if j != i):
            return i
    return None


def has_offdiag_nonzero_rows(A: SquareMatrix) -> bool:
    return first_row_without_offdiag(A) is None
