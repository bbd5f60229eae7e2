"""Rooted spanning tree vectors and universal state reduction over
commutative semirings."""

from .algebra import (
    BooleanSubsets,
    Classical,
    Interval,
    MaxMin,
    MaxPlus,
    MaxTimes,
    MinPlus,
    Semiring,
    from_descriptor,
    make_algebra,
)
from .errors import (
    AlgebraError,
    AlgebraMismatch,
    DimensionMismatch,
    InternalInvariantViolated,
    NotASemifield,
    OracleCapExceeded,
    PreconditionViolated,
    SemitreeError,
    ZeroInverse,
)
from .matrix import (
    RstVector,
    SquareMatrix,
    has_offdiag_nonzero_rows,
    is_stochastic,
    row_offdiag_sum,
    transpose_apply,
)
from .oracle import (
    FunctionalGraph,
    RootedTree,
    cayley_check,
    check_balance,
    enumerate_functional_graphs,
    enumerate_rooted_trees,
    rst_vector_bruteforce,
    tree_weight,
    unicyclic_total_weight,
)
from .reduction import (
    OpCounts,
    ReductionTrace,
    count_ops,
    phase1,
    phase2,
    state_reduction,
    verify_lemma2,
)

__version__ = "0.1.0"
