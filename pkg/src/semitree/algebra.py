"""Commutative semirings used throughout semitree.

Every algebra is an immutable descriptor object.  Scalars are plain Python
values interpreted by the descriptor that owns them:

* real carriers (classical, max-times, max-plus, min-plus, max-min) use ``float``
* boolean-subsets uses an ``int`` bitmask over the ordered universe
* interval uses a ``(lo, hi)`` tuple of base scalars

Two descriptors compare equal exactly when they describe the same algebra,
which is what container types use to reject mixed-algebra operations.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Any, ClassVar, Iterable

import numpy as np

from .errors import AlgebraError, NotASemifield, ZeroInverse

REL_TOL = 1e-9
ABS_TOL = 1e-12
MAX_UNIVERSE = 64

KINDS = (
    "classical-nonneg",
    "max-times",
    "max-plus",
    "min-plus",
    "boolean-subsets",
    "max-min",
    "interval",
)


class Semiring:
    """Base class for the seven supported commutative semirings."""

    kind: ClassVar[str]
    is_semifield: ClassVar[bool] = False
    is_idempotent_add: ClassVar[bool] = False
    # every supported instance is antinegative
    is_antinegative: ClassVar[bool] = True

    zero: Any
    one: Any

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotASemifield(f"{self.kind} is not a semifield; inverses do not exist")

    def eq(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        """Exact structural test against the additive identity."""
        return x == self.zero

    def leq(self, x, y) -> bool:
        """Canonical order ``x + y = y`` (meaningful for idempotent addition)."""
        return self.eq(self.add(x, y), y)

    def sum(self, xs: Iterable):
        total = self.zero
        for x in xs:
            total = self.add(total, x)
        return total

    def prod(self, xs: Iterable):
        total = self.one
        for x in xs:
            total = self.mul(total, x)
        return total

    def power(self, x, k: int):
        """``x`` multiplied by itself ``k`` times (``one`` for ``k == 0``)."""
        if k < 0:
            raise ValueError("negative exponent")
        result = self.one
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def validate(self, x):
        """Return ``x`` normalised to this carrier or raise AlgebraError."""
        raise NotImplementedError

    def decode(self, obj):
        """Parse a JSON-level scalar encoding."""
        raise NotImplementedError

    def encode(self, x, digits: int | None = 12):
        """JSON-level scalar encoding of ``x``.

        Real values are rounded to ``digits`` significant digits; ``None``
        keeps full precision.
        """
        raise NotImplementedError

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def format(self, x) -> str:
        return str(self.encode(x))


# --------------------------------------------------------------------------
# real carriers


class RealSemiring(Semiring):
    """Semirings whose carrier is a subset of the extended reals.

    ``add_ufunc`` and ``mul_ufunc`` are the numpy equivalents of ``add`` and
    ``mul`` and are what the vectorised state reduction runs on.
    """

    add_ufunc: ClassVar[np.ufunc]
    mul_ufunc: ClassVar[np.ufunc]
    _nonneg: ClassVar[bool] = False
    _neg_inf: ClassVar[bool] = False
    _pos_inf: ClassVar[bool] = False

    def eq(self, x, y) -> bool:
        return math.isclose(x, y, rel_tol=REL_TOL, abs_tol=ABS_TOL)

    def validate(self, x):
        if isinstance(x, bool) or not isinstance(x, (int, float, np.integer, np.floating)):
            raise AlgebraError(f"{self.kind}: expected a real number, got {x!r}")
        x = float(x)
        if math.isnan(x):
            raise AlgebraError(f"{self.kind}: NaN is not a scalar")
        if x == math.inf and not self._pos_inf:
            raise AlgebraError(f"{self.kind}: +inf is not in the carrier")
        if x == -math.inf and not self._neg_inf:
            raise AlgebraError(f"{self.kind}: -inf is not in the carrier")
        if self._nonneg and x < 0:
            raise AlgebraError(f"{self.kind}: negative value {x!r}")
        return x + 0.0  # folds -0.0 into 0.0

    def decode(self, obj):
        if isinstance(obj, str):
            token = obj.strip()
            if token == "-inf":
                return self.validate(-math.inf)
            if token in ("+inf", "inf"):
                return self.validate(math.inf)
            raise AlgebraError(f"{self.kind}: cannot parse {obj!r}")
        return self.validate(obj)

    def encode(self, x, digits: int | None = 12):
        if x == math.inf:
            return "+inf"
        if x == -math.inf:
            return "-inf"
        if digits is None:
            return float(x) + 0.0
        return float(f"{x:.{digits}g}") + 0.0


@dataclass(frozen=True)
class Classical(RealSemiring):
    kind: ClassVar[str] = "classical-nonneg"
    is_semifield: ClassVar[bool] = True
    add_ufunc: ClassVar[np.ufunc] = np.add
    mul_ufunc: ClassVar[np.ufunc] = np.multiply
    _nonneg: ClassVar[bool] = True

    zero: ClassVar[float] = 0.0
    one: ClassVar[float] = 1.0

    add = staticmethod(operator.add)
    mul = staticmethod(operator.mul)

    def inv(self, x):
        if x == 0.0:
            raise ZeroInverse("0 has no inverse")
        return 1.0 / x


@dataclass(frozen=True)
class MaxTimes(RealSemiring):
    kind: ClassVar[str] = "max-times"
    is_semifield: ClassVar[bool] = True
    is_idempotent_add: ClassVar[bool] = True
    add_ufunc: ClassVar[np.ufunc] = np.maximum
    mul_ufunc: ClassVar[np.ufunc] = np.multiply
    _nonneg: ClassVar[bool] = True

    zero: ClassVar[float] = 0.0
    one: ClassVar[float] = 1.0

    add = staticmethod(max)
    mul = staticmethod(operator.mul)

    def inv(self, x):
        if x == 0.0:
            raise ZeroInverse("0 has no inverse")
        return 1.0 / x


@dataclass(frozen=True)
class MaxPlus(RealSemiring):
    kind: ClassVar[str] = "max-plus"
    is_semifield: ClassVar[bool] = True
    is_idempotent_add: ClassVar[bool] = True
    add_ufunc: ClassVar[np.ufunc] = np.maximum
    mul_ufunc: ClassVar[np.ufunc] = np.add
    _neg_inf: ClassVar[bool] = True

    zero: ClassVar[float] = -math.inf
    one: ClassVar[float] = 0.0

    add = staticmethod(max)
    mul = staticmethod(operator.add)

    def inv(self, x):
        if x == -math.inf:
            raise ZeroInverse("-inf has no inverse")
        return -x + 0.0


@dataclass(frozen=True)
class MinPlus(RealSemiring):
    kind: ClassVar[str] = "min-plus"
    is_semifield: ClassVar[bool] = True
    is_idempotent_add: ClassVar[bool] = True
    add_ufunc: ClassVar[np.ufunc] = np.minimum
    mul_ufunc: ClassVar[np.ufunc] = np.add
    _pos_inf: ClassVar[bool] = True

    zero: ClassVar[float] = math.inf
    one: ClassVar[float] = 0.0

    add = staticmethod(min)
    mul = staticmethod(operator.add)

    def inv(self, x):
        if x == math.inf:
            raise ZeroInverse("+inf has no inverse")
        return -x + 0.0


@dataclass(frozen=True)
class MaxMin(RealSemiring):
    kind: ClassVar[str] = "max-min"
    is_idempotent_add: ClassVar[bool] = True
    add_ufunc: ClassVar[np.ufunc] = np.maximum
    mul_ufunc: ClassVar[np.ufunc] = np.minimum
    _neg_inf: ClassVar[bool] = True
    _pos_inf: ClassVar[bool] = True

    zero: ClassVar[float] = -math.inf
    one: ClassVar[float] = math.inf

    add = staticmethod(max)
    mul = staticmethod(min)


# --------------------------------------------------------------------------
# subsets of a finite universe


@dataclass(frozen=True)
class BooleanSubsets(Semiring):
    """Subsets of ``universe`` as bitmasks: bit ``j`` stands for ``universe[j]``."""

    universe: tuple[str, ...]

    kind: ClassVar[str] = "boolean-subsets"
    is_idempotent_add: ClassVar[bool] = True

    def __post_init__(self):
        universe = tuple(self.universe)
        if not universe:
            raise AlgebraError("boolean-subsets needs a nonempty universe")
        if len(universe) > MAX_UNIVERSE:
            raise AlgebraError(f"universe is limited to {MAX_UNIVERSE} elements")
        if not all(isinstance(u, str) for u in universe):
            raise AlgebraError("universe elements must be strings")
        if len(set(universe)) != len(universe):
            raise AlgebraError("universe elements must be distinct")
        object.__setattr__(self, "universe", universe)

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return (1 << len(self.universe)) - 1

    def add(self, x, y):
        return x | y

    def mul(self, x, y):
        return x & y

    def subset(self, *names: str) -> int:
        mask = 0
        for name in names:
            try:
                mask |= 1 << self.universe.index(name)
            except ValueError:
                raise AlgebraError(f"{name!r} is not in the universe") from None
        return mask

    def members(self, x: int) -> list[str]:
        return [u for j, u in enumerate(self.universe) if x >> j & 1]

    def validate(self, x):
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise AlgebraError(f"boolean-subsets: expected a bitmask, got {x!r}")
        x = int(x)
        if x < 0 or x > self.one:
            raise AlgebraError(f"boolean-subsets: bitmask {x} outside the universe")
        return x

    def decode(self, obj):
        if not isinstance(obj, (list, tuple)):
            raise AlgebraError(f"boolean-subsets: expected a list of names, got {obj!r}")
        return self.subset(*obj)

    def encode(self, x, digits: int | None = 12):
        return self.members(x)

    def format(self, x) -> str:
        return "{" + ", ".join(self.members(x)) + "}"

    def descriptor(self) -> dict:
        return {"kind": self.kind, "universe": list(self.universe)}


# --------------------------------------------------------------------------
# order intervals over an idempotent base


@dataclass(frozen=True)
class Interval(Semiring):
    """Order intervals ``(lo, hi)`` with ``lo + hi = hi`` in ``base``."""

    base: Semiring

    kind: ClassVar[str] = "interval"
    is_idempotent_add: ClassVar[bool] = True

    def __post_init__(self):
        if not isinstance(self.base, Semiring):
            raise AlgebraError("interval base must be an algebra")
        if not self.base.is_idempotent_add:
            raise AlgebraError(
                f"interval needs a base with idempotent addition, not {self.base.kind}"
            )

    @property
    def zero(self):
        return (self.base.zero, self.base.zero)

    @property
    def one(self):
        return (self.base.one, self.base.one)

    def add(self, x, y):
        b = self.base
        return (b.add(x[0], y[0]), b.add(x[1], y[1]))

    def mul(self, x, y):
        b = self.base
        return (b.mul(x[0], y[0]), b.mul(x[1], y[1]))

    def eq(self, x, y) -> bool:
        return self.base.eq(x[0], y[0]) and self.base.eq(x[1], y[1])

    def validate(self, x):
        if not isinstance(x, tuple) or len(x) != 2:
            raise AlgebraError(f"interval: expected a (lo, hi) pair, got {x!r}")
        lo, hi = self.base.validate(x[0]), self.base.validate(x[1])
        if not self.base.leq(lo, hi):
            raise AlgebraError(f"interval: lower end {x[0]!r} is not below {x[1]!r}")
        return (lo, hi)

    def decode(self, obj):
        if not isinstance(obj, (list, tuple)) or len(obj) != 2:
            raise AlgebraError(f"interval: expected [lo, hi], got {obj!r}")
        return self.validate((self.base.decode(obj[0]), self.base.decode(obj[1])))

    def encode(self, x, digits: int | None = 12):
        return [self.base.encode(x[0], digits), self.base.encode(x[1], digits)]

    def format(self, x) -> str:
        return f"[{self.base.format(x[0])}, {self.base.format(x[1])}]"

    def descriptor(self) -> dict:
        return {"kind": self.kind, "base": self.base.descriptor()}


_SIMPLE = {cls.kind: cls for cls in (Classical, MaxTimes, MaxPlus, MinPlus, MaxMin)}


def make_algebra(kind: str, universe=None, base=None) -> Semiring:
    """Build an algebra from its kind name and parameters.

    ``base`` may be an algebra or a descriptor mapping.
    """
    if kind == "boolean-subsets":
        if base is not None:
            raise AlgebraError("boolean-subsets takes no base")
        if universe is None:
            raise AlgebraError("boolean-subsets needs a universe")
        return BooleanSubsets(tuple(universe))
    if universe is not None:
        raise AlgebraError(f"{kind} takes no universe")
    if kind == "interval":
        if base is None:
            raise AlgebraError("interval needs a base algebra")
        if not isinstance(base, Semiring):
            base = from_descriptor(base)
        return Interval(base)
    if base is not None:
        raise AlgebraError(f"{kind} takes no base")
    try:
        return _SIMPLE[kind]()
    except KeyError:
        raise AlgebraError(f"unknown algebra kind {kind!r}") from None


def from_descriptor(desc) -> Semiring:
    """Inverse of :meth:`Semiring.descriptor`; also accepts a bare kind string."""
    if isinstance(desc, str):
        return make_algebra(desc)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise AlgebraError(f"algebra descriptor must be an object with a kind, got {desc!r}")
    extra = set(desc) - {"kind", "universe", "base"}
    if extra:
        raise AlgebraError(f"unknown algebra fields: {sorted(extra)}")
    return make_algebra(desc["kind"], universe=desc.get("universe"), base=desc.get("base"))
