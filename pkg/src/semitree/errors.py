"""Exception types raised by semitree."""


class SemitreeError(Exception):
    pass


class AlgebraError(SemitreeError, ValueError):
    """Invalid algebra descriptor or a value outside an algebra's carrier."""


class AlgebraMismatch(SemitreeError, ValueError):
    pass


class DimensionMismatch(SemitreeError, ValueError):
    pass


class NotASemifield(SemitreeError, TypeError):
    pass


class ZeroInverse(SemitreeError, ZeroDivisionError):
    pass


class PreconditionViolated(SemitreeError, ValueError):
    """A row of the input has no nonzero off-diagonal entry."""

    def __init__(self, row, message=None):
        self.row = row
        super().__init__(
            message
            or f"row {row + 1} has no nonzero off-diagonal entry; "
            "state reduction needs one in every row"
        )


class InternalInvariantViolated(SemitreeError, RuntimeError):
    pass


class OracleCapExceeded(SemitreeError, ValueError):
    pass
