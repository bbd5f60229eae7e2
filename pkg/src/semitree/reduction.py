"""Universal state reduction over commutative antinegative semifields.

Phase 1 suppresses states ``0, 1, ..., n-2`` in turn, folding every path
through the suppressed state into the edges between the remaining states.
Phase 2 recovers the rooted-spanning-tree vector by backward substitution.
Over the classical nonnegative reals this is the GTH algorithm; over
max-times it yields maximum arborescence weights.

All supported semifields have real carriers, so the work is done on numpy
arrays using each algebra's ``add_ufunc`` / ``mul_ufunc``.
"""

from __future__ import annotations

import math
import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import RealSemiring, Semiring
from .errors import InternalInvariantViolated, NotASemifield, PreconditionViolated
from .matrix import RstVector, SquareMatrix, first_row_without_offdiag


@dataclass
class OpCounts:
    adds: int = 0
    muls: int = 0
    invs: int = 0


class _Kernel:
    """Semifield arithmetic on arrays, tallying every scalar operation."""

    def __init__(self, alg: RealSemiring, counts: OpCounts):
        self.alg = alg
        self.counts = counts
        self._add = alg.add_ufunc
        self._mul = alg.mul_ufunc

    def add(self, x, y):
        out = self._add(x, y)
        self.counts.adds += np.size(out)
        return out

    def mul(self, x, y):
        out = self._mul(x, y)
        self.counts.muls += np.size(out)
        return out

    def inv(self, x):
        self.counts.invs += 1
        out = self.alg.inv(float(x))
        if math.isinf(out):
            raise FloatingPointError(f"inverse of {x!r} overflows")
        return out

    def total(self, xs):
        """Sum of a nonempty vector: ``len(xs) - 1`` additions."""
        self.counts.adds += len(xs) - 1
        return float(self._add.reduce(xs))

    def accumulate(self, xs):
        """Sum of ``xs`` added one at a time onto ``zero``: ``len(xs)`` additions."""
        self.counts.adds += len(xs)
        return float(self._add.reduce(xs, initial=self.alg.zero))

    def product(self, xs):
        if len(xs) == 0:
            return self.alg.one
        self.counts.muls += len(xs) - 1
        return float(self._mul.reduce(xs))


@dataclass
class ReductionTrace:
    """State of a (possibly partial) Phase 1 run.

    ``steps`` states have been suppressed.  After step ``i`` (0-based) the
    entries ``[k, l]`` with ``k, l > i`` hold the reduced network on states
    ``i+1, ..., n-1``; column ``i`` below the diagonal is left as it was when
    state ``i`` was suppressed, which is what backward substitution reads.
    """

    algebra: RealSemiring
    n: int
    array: np.ndarray
    s: list = field(default_factory=list)
    s_inv: list = field(default_factory=list)
    counts: OpCounts = field(default_factory=OpCounts)

    @property
    def steps(self) -> int:
        return len(self.s)

    @property
    def reduced(self) -> SquareMatrix:
        return SquareMatrix.from_array(self.algebra, self.array)

    def reduced_network(self) -> SquareMatrix:
        """The network on the states not yet suppressed."""
        k = self.steps
        return SquareMatrix.from_array(self.algebra, self.array[k:, k:])


@contextmanager
def _overflow_guard():
    try:
        with np.errstate(over="raise"):
            yield
    except FloatingPointError as exc:
        raise OverflowError(
            "tree weights left the floating-point range; scaling A by c scales "
            "every component by c**(n-1)"
        ) from exc


def _require_semifield(alg: Semiring):
    if not alg.is_semifield:
        raise NotASemifield(f"state reduction needs a semifield; {alg.kind} is not one")


def _check_lemma1(a: np.ndarray, start: int, zero: float):
    block = a[start:, start:] != zero
    m = block.shape[0]
    if m < 2:
        return
    np.fill_diagonal(block, False)
    bad = np.flatnonzero(~block.any(axis=1))
    if bad.size:
        raise InternalInvariantViolated(
            f"reduced row {start + bad[0] + 1} lost all nonzero off-diagonal entries"
        )


def phase1(
    A: SquareMatrix,
    *,
    steps: Optional[int] = None,
    check_invariants: bool = False,
) -> ReductionTrace:
    """Suppress states in index order, updating a copy of ``A`` in place.

    ``steps`` stops after that many suppressions (default ``n - 1``).
    ``check_invariants`` verifies after each step that every remaining row
    keeps a nonzero off-diagonal entry.
    """
    alg = A.algebra
    _require_semifield(alg)
    bad = first_row_without_offdiag(A)
    if bad is not None:
        raise PreconditionViolated(bad)
    n = A.n
    if steps is None:
        steps = n - 1
    if not 0 <= steps <= n - 1:
        raise ValueError(f"steps must lie in 0..{n - 1}")

    trace = ReductionTrace(alg, n, A.to_array())
    with _overflow_guard():
        _suppress(trace, steps, check_invariants)
    return trace


def _suppress(trace: ReductionTrace, steps: int, check_invariants: bool):
    alg = trace.algebra
    ops = _Kernel(alg, trace.counts)
    a, zero = trace.array, alg.zero
    for i in range(steps):
        s = ops.total(a[i, i + 1:])
        if s == zero:
            # Either floating-point underflow, or state i+1 cannot reach any
            # later state of the reduced network.  The latter happens for
            # reducible inputs even when every row has an off-diagonal entry.
            raise InternalInvariantViolated(
                f"s_{i + 1} vanished: state {i + 1} has no remaining edge to a later "
                "state (reducible input or underflow)"
            )
        s_inv = ops.inv(s)
        trace.s.append(s)
        trace.s_inv.append(s_inv)
        through = ops.mul(ops.mul(a[i + 1:, i, None], a[None, i, i + 1:]), s_inv)
        a[i + 1:, i + 1:] = ops.add(a[i + 1:, i + 1:], through)
        if check_invariants:
            _check_lemma1(a, i + 1, zero)


def phase2(trace: ReductionTrace) -> RstVector:
    """Backward substitution on a completed Phase 1 trace."""
    n, alg, a = trace.n, trace.algebra, trace.array
    if trace.steps != n - 1:
        raise ValueError("phase2 needs a trace with all n-1 states suppressed")
    ops = _Kernel(alg, trace.counts)
    w = np.full(n, alg.zero)
    with _overflow_guard():
        w[n - 1] = ops.product(np.asarray(trace.s, dtype=float))
        for i in range(n - 2, -1, -1):
            acc = ops.accumulate(ops.mul(w[i + 1:], a[i + 1:, i]))
            w[i] = ops.mul(acc, trace.s_inv[i])
    return RstVector(alg, w.tolist())


def state_reduction(A: SquareMatrix, *, check_invariants: bool = False) -> RstVector:
    return phase2(phase1(A, check_invariants=check_invariants))


def reduce_with_trace(A: SquareMatrix) -> tuple[RstVector, ReductionTrace]:
    trace = phase1(A)
    return phase2(trace), trace


def verify_lemma2(A: SquareMatrix, step: int) -> bool:
    """Check that suppressing one more state scales the tree weights by ``s``.

    For ``step`` = i in ``1..n-1``, the rooted-tree vector of the network
    left after i suppressions, multiplied by ``s_i``, must equal the
    rooted-tree vector of the network left after ``i-1`` suppressions on
    every surviving state.  Both vectors come from exhaustive enumeration.
    """
    from .oracle import rst_vector_bruteforce

    n = A.n
    if not 1 <= step <= n - 1:
        raise ValueError(f"step must lie in 1..{n - 1}")
    before = phase1(A, steps=step - 1).reduced_network()
    after_trace = phase1(A, steps=step)
    after = after_trace.reduced_network()
    s = after_trace.s[step - 1]
    alg = A.algebra
    w_before = rst_vector_bruteforce(before)
    w_after = rst_vector_bruteforce(after)
    # w_before is indexed from state step-1, w_after from state step
    return all(alg.eq(alg.mul(s, w_after[k]), w_before[k + 1]) for k in range(len(w_after)))


def expected_op_counts(n: int) -> OpCounts:
    """Operation counts of one run, from the loop structure.

    With ``m = n - 1`` and ``j = n - i`` running over ``1..m``:

    * Phase 1 step: ``j - 1`` additions for ``s``, one inversion, and
      ``j**2`` cells each costing one addition and two multiplications.
    * Phase 2: ``m - 1`` multiplications for the product of the ``s``; each
      entry costs ``j`` multiplications and ``j`` additions onto zero, then
      one multiplication by the cached inverse.
    """
    m = n - 1
    sum_j = m * (m + 1) // 2
    sum_j2 = m * (m + 1) * (2 * m + 1) // 6
    adds = (sum_j - m) + sum_j2 + sum_j
    muls = 2 * sum_j2 + max(m - 1, 0) + sum_j + m
    return OpCounts(adds=adds, muls=muls, invs=m)


def count_ops(n: int, kind: str = "classical-nonneg", seed: int = 0) -> OpCounts:
    """Run state reduction on a dense random n x n matrix and return its tally."""
    from .algebra import make_algebra
    from .sampling import random_matrix

    if n < 2:
        raise ValueError("n must be at least 2")
    alg = make_algebra(kind)
    A = random_matrix(alg, n, random.Random(seed), zero_prob=0.0)
    return reduce_with_trace(A)[1].counts
