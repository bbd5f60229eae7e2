"""Random scalars and matrices for every supported algebra.

All functions draw from a caller-supplied ``random.Random`` so results are
reproducible from a seed.
"""

from __future__ import annotations

import math
import random

from .algebra import BooleanSubsets, Interval, Semiring
from .matrix import SquareMatrix


def random_nonzero(alg: Semiring, rng: random.Random):
    kind = alg.kind
    if kind == "classical-nonneg":
        return 1.0 - rng.random()  # (0, 1]
    if kind == "max-times":
        return rng.uniform(0.1, 4.0)
    if kind in ("max-plus", "min-plus"):
        return rng.uniform(-5.0, 5.0)
    if kind == "max-min":
        return math.inf if rng.random() < 0.1 else rng.uniform(-5.0, 5.0)
    if kind == "boolean-subsets":
        return rng.randint(1, alg.one)
    if kind == "interval":
        base = alg.base
        lo = random_scalar(base, rng, zero_prob=0.3)
        hi = base.add(lo, random_nonzero(base, rng))
        return (lo, hi)
    raise ValueError(f"no sampler for {kind}")


def random_scalar(alg: Semiring, rng: random.Random, zero_prob: float = 0.0):
    if rng.random() < zero_prob:
        return alg.zero
    return random_nonzero(alg, rng)


def random_matrix(
    alg: Semiring,
    n: int,
    rng: random.Random,
    zero_prob: float = 0.0,
    offdiag_nonzero: bool = False,
) -> SquareMatrix:
    """Random ``n x n`` matrix; ``offdiag_nonzero`` forces every off-diagonal
    entry to be nonzero."""
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            p = 0.0 if offdiag_nonzero and i != j else zero_prob
            row.append(random_scalar(alg, rng, p))
        rows.append(row)
    return SquareMatrix(alg, rows)


def _stochastic_row(alg: Semiring, n: int, rng: random.Random, zero_prob: float) -> list:
    kind = alg.kind
    pivot = rng.randrange(n)
    if kind == "classical-nonneg":
        row = [0.0 if rng.random() < zero_prob else rng.random() for _ in range(n)]
        row[pivot] += 1.0 - rng.random()
        total = math.fsum(row)
        return [x / total for x in row]
    if kind == "max-times":
        row = [0.0 if rng.random() < zero_prob else rng.random() for _ in range(n)]
    elif kind == "max-plus":
        row = [-math.inf if rng.random() < zero_prob else rng.uniform(-5.0, 0.0) for _ in range(n)]
    elif kind == "min-plus":
        row = [math.inf if rng.random() < zero_prob else rng.uniform(0.0, 5.0) for _ in range(n)]
    elif kind == "max-min":
        row = [-math.inf if rng.random() < zero_prob else rng.uniform(-5.0, 5.0) for _ in range(n)]
    elif kind == "boolean-subsets":
        row = [random_scalar(alg, rng, zero_prob) for _ in range(n)]
        missing = alg.one & ~alg.sum(row)
        for bit in range(len(alg.universe)):
            if missing >> bit & 1:
                row[rng.randrange(n)] |= 1 << bit
        return row
    elif kind == "interval":
        # lo from one stochastic row, hi = lo + another: both ends sum to one
        lo = _stochastic_row(alg.base, n, rng, zero_prob)
        extra = _stochastic_row(alg.base, n, rng, zero_prob)
        return [(x, alg.base.add(x, y)) for x, y in zip(lo, extra)]
    else:
        raise ValueError(f"no sampler for {kind}")
    row[pivot] = alg.one
    return row


def random_stochastic_matrix(
    alg: Semiring, n: int, rng: random.Random, zero_prob: float = 0.3
) -> SquareMatrix:
    """Random matrix whose rows each sum (in ``alg``) to ``one``."""
    return SquareMatrix(alg, [_stochastic_row(alg, n, rng, zero_prob) for _ in range(n)])


def random_irreducible_stochastic(n: int, rng: random.Random, density: float = 0.5):
    """Classical row-stochastic matrix whose digraph is strongly connected.

    A random Hamiltonian cycle guarantees irreducibility; other edges appear
    with probability ``density``.
    """
    from .algebra import Classical

    order = list(range(n))
    rng.shuffle(order)
    rows = [[0.0] * n for _ in range(n)]
    for k in range(n):
        rows[order[k]][order[(k + 1) % n]] = 1.0 - rng.random()
    for i in range(n):
        for j in range(n):
            if rows[i][j] == 0.0 and rng.random() < density:
                rows[i][j] = 1.0 - rng.random()
        total = math.fsum(rows[i])
        rows[i] = [x / total for x in rows[i]]
    return SquareMatrix(Classical(), rows)


def sample_algebras(universe=("s1", "s2", "s3")) -> list[Semiring]:
    """One instance of each of the seven kinds (interval over max-plus)."""
    from .algebra import make_algebra

    return [
        make_algebra("classical-nonneg"),
        make_algebra("max-times"),
        make_algebra("max-plus"),
        make_algebra("min-plus"),
        BooleanSubsets(tuple(universe)),
        make_algebra("max-min"),
        Interval(make_algebra("max-plus")),
    ]
