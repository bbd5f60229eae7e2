"""Exhaustive enumeration of rooted spanning trees and functional graphs.

These routines compute rooted-spanning-tree quantities straight from their
combinatorial definitions.  They are exponential and exist to certify the
fast algorithms on small inputs, so sizes are capped.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .algebra import Semiring
from .errors import DimensionMismatch, OracleCapExceeded
from .matrix import RstVector, SquareMatrix

HARD_CAP = 9
_CACHE_MAX_N = 7


def oracle_cap() -> int:
    """Largest n the oracle accepts; SEMITREE_ORACLE_CAP may lower it."""
    raw = os.environ.get("SEMITREE_ORACLE_CAP")
    if raw is None:
        return HARD_CAP
    try:
        value = int(raw)
    except ValueError:
        return HARD_CAP
    return max(1, min(value, HARD_CAP))


def _check_cap(n: int):
    cap = oracle_cap()
    if n > cap:
        raise OracleCapExceeded(f"n={n} exceeds the oracle cap of {cap}")


@dataclass(frozen=True)
class RootedTree:
    """Spanning tree with every edge directed toward ``root``.

    ``succ[v]`` is the successor of ``v``; ``succ[root]`` is None.
    """

    root: int
    succ: tuple[Optional[int], ...]

    def __post_init__(self):
        n = len(self.succ)
        if self.succ[self.root] is not None:
            raise ValueError("the root has no outgoing edge")
        for v in range(n):
            seen = set()
            u = v
            while u != self.root:
                if u in seen:
                    raise ValueError(f"cycle through vertex {u}")
                seen.add(u)
                u = self.succ[u]
                if u is None or not 0 <= u < n:
                    raise ValueError("successor out of range")

    @property
    def n(self) -> int:
        return len(self.succ)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v, u in enumerate(self.succ) if u is not None]

    def indegree(self, k: int) -> int:
        return sum(1 for u in self.succ if u == k)


@dataclass(frozen=True)
class FunctionalGraph:
    succ: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.succ)

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles, each listed from its smallest vertex."""
        state = [0] * self.n  # 0 unvisited, 1 on current path, 2 done
        found = []
        for start in range(self.n):
            path = []
            v = start
            while state[v] == 0:
                state[v] = 1
                path.append(v)
                v = self.succ[v]
            if state[v] == 1:
                cyc = path[path.index(v):]
                k = cyc.index(min(cyc))
                found.append(tuple(cyc[k:] + cyc[:k]))
            for u in path:
                state[u] = 2
        return sorted(found)

    def is_unicyclic_through(self, i: int) -> bool:
        """One cycle only, passing through ``i``, and not a loop."""
        cyc = self.cycles()
        return len(cyc) == 1 and len(cyc[0]) > 1 and i in cyc[0]


# --------------------------------------------------------------------------
# enumeration


def _tree_successor_maps(n: int, root: int) -> Iterator[tuple]:
    # Assign successors vertex by vertex, rejecting a choice as soon as it
    # closes a cycle.  Completed assignments are exactly the root-trees.
    succ: list[Optional[int]] = [None] * n
    order = [v for v in range(n) if v != root]

    def closes_cycle(v: int) -> bool:
        u = succ[v]
        while u is not None and u != root:
            if u == v:
                return True
            u = succ[u]
        return False

    def extend(pos: int):
        if pos == len(order):
            yield tuple(succ)
            return
        v = order[pos]
        for u in range(n):
            if u == v:
                continue
            succ[v] = u
            if not closes_cycle(v):
                yield from extend(pos + 1)
        succ[v] = None

    yield from extend(0)


@lru_cache(maxsize=None)
def _cached_trees(n: int, root: int) -> tuple:
    return tuple(_tree_successor_maps(n, root))


def _trees(n: int, root: int):
    if n <= _CACHE_MAX_N:
        return _cached_trees(n, root)
    return _tree_successor_maps(n, root)


def enumerate_rooted_trees(n: int, root: int) -> Iterator[RootedTree]:
    """Every spanning tree of the complete digraph on ``n`` vertices directed
    toward ``root``, each exactly once."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= root < n:
        raise IndexError(f"root {root} out of range for n={n}")
    _check_cap(n)
    for succ in _trees(n, root):
        yield RootedTree(root, succ)


def enumerate_functional_graphs(n: int, loops: bool = True) -> Iterator[FunctionalGraph]:
    """All ``n**n`` successor maps (``(n-1)**n`` without loops)."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_cap(n)
    if loops:
        for succ in itertools.product(range(n), repeat=n):
            yield FunctionalGraph(succ)
    else:
        choices = [[u for u in range(n) if u != v] for v in range(n)]
        for succ in itertools.product(*choices):
            yield FunctionalGraph(succ)


@lru_cache(maxsize=None)
def _unicyclic_maps(n: int) -> tuple:
    # A loop is itself a cycle, so a graph that has one can never be
    # i-unicyclic for any i; skipping loops loses nothing.
    out = []
    for g in enumerate_functional_graphs(n, loops=False):
        cyc = g.cycles()
        if len(cyc) == 1:
            out.append((g.succ, frozenset(cyc[0])))
    return tuple(out)


# --------------------------------------------------------------------------
# weights


def _require_n(A: SquareMatrix, n: int):
    if A.n != n:
        raise DimensionMismatch(f"structure on {n} vertices against {A.n}x{A.n} matrix")


def tree_weight(A: SquareMatrix, T: RootedTree):
    """Product of ``a[v, succ(v)]`` over the tree's edges (``one`` when n == 1)."""
    _require_n(A, T.n)
    alg = A.algebra
    return alg.prod(A[v, u] for v, u in T.edges)


def graph_weight(A: SquareMatrix, g: FunctionalGraph):
    _require_n(A, g.n)
    return A.algebra.prod(A[v, u] for v, u in enumerate(g.succ))


def _weight_of(alg: Semiring, E, succ) -> object:
    w = alg.one
    for v, u in enumerate(succ):
        if u is not None:
            w = alg.mul(w, E[v][u])
    return w


def rst_vector_bruteforce(A: SquareMatrix) -> RstVector:
    """Rooted-spanning-tree vector by summing tree weights root by root."""
    _check_cap(A.n)
    alg, E = A.algebra, A.entries
    w = [alg.sum(_weight_of(alg, E, succ) for succ in _trees(A.n, i)) for i in range(A.n)]
    return RstVector(alg, w)


def unicyclic_weights(A: SquareMatrix) -> list:
    """Total weight of the i-unicyclic functional graphs, for every ``i``."""
    _check_cap(A.n)
    alg, E, n = A.algebra, A.entries, A.n
    totals = [alg.zero] * n
    if n <= _CACHE_MAX_N:
        maps = _unicyclic_maps(n)
    else:
        maps = (
            (g.succ, frozenset(c[0]))
            for g in enumerate_functional_graphs(n, loops=False)
            if len(c := g.cycles()) == 1
        )
    for succ, cycle in maps:
        w = _weight_of(alg, E, succ)
        for i in cycle:
            totals[i] = alg.add(totals[i], w)
    return totals


def unicyclic_total_weight(A: SquareMatrix, i: int):
    if not 0 <= i < A.n:
        raise IndexError(f"vertex {i} out of range for n={A.n}")
    return unicyclic_weights(A)[i]


@dataclass(frozen=True)
class BalanceRow:
    vertex: int
    lhs: object
    rhs: object
    unicyclic: object
    holds: bool


def balance_report(A: SquareMatrix, w: Optional[RstVector] = None) -> list[BalanceRow]:
    """Both sides of the tree balance identity at every vertex, alongside the
    independently enumerated unicyclic weight they must both equal."""
    alg, n = A.algebra, A.n
    if w is None:
        w = rst_vector_bruteforce(A)
    pis = unicyclic_weights(A)
    rows = []
    for i in range(n):
        out_i = alg.sum(A[i, j] for j in range(n) if j != i)
        lhs = alg.mul(w[i], out_i)
        rhs = alg.sum(alg.mul(w[j], A[j, i]) for j in range(n) if j != i)
        holds = alg.eq(lhs, rhs) and alg.eq(lhs, pis[i]) and alg.eq(rhs, pis[i])
        rows.append(BalanceRow(i, lhs, rhs, pis[i], holds))
    return rows


def check_balance(A: SquareMatrix) -> bool:
    return all(r.holds for r in balance_report(A))


def cayley_check(alg: Semiring, xs: Sequence, distinguished: Optional[int] = None):
    """Both sides of the tree enumerator identity.

    The left side is ``(x_1 + ... + x_n)^(n-2) * x_r`` by repeated
    multiplication; the right side sums ``prod_k x_k^indeg(k, T)`` over all
    trees ``T`` rooted at ``r``.  Returns ``(lhs, rhs)``.
    """
    n = len(xs)
    if n < 2:
        raise ValueError("need at least two scalars")
    _check_cap(n)
    root = n - 1 if distinguished is None else distinguished
    if not 0 <= root < n:
        raise IndexError(f"distinguished index {root} out of range")
    xs = [alg.validate(x) for x in xs]
    lhs = alg.mul(alg.power(alg.sum(xs), n - 2), xs[root])
    terms = []
    for succ in _trees(n, root):
        indeg = [0] * n
        for u in succ:
            if u is not None:
                indeg[u] += 1
        terms.append(alg.prod(alg.power(xs[k], indeg[k]) for k in range(n)))
    return lhs, alg.sum(terms)
