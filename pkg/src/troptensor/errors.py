"""Exception types raised across the package."""


class TropTensorError(Exception):
    """Base class for all package errors."""


class HypothesisViolation(TropTensorError):
    """The per-row finite supports are empty or not mutually equal.

    ``row`` is the 0-based index of the first offending row.
    """

    def __init__(self, row, reason=""):
        self.row = row
        msg = f"support hypothesis fails at row {row + 1}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class DimensionMismatch(TropTensorError, ValueError):
    pass


class NotSymmetric(TropTensorError, ValueError):
    pass


class PreconditionFailed(TropTensorError, ValueError):
    pass


class NotConverged(TropTensorError):
    pass


class LambdaMismatch(TropTensorError):
    """A verified eigenvector implies an eigenvalue other than the LP value."""


class NoCycleFound(TropTensorError):
    pass


class SizeCapExceeded(TropTensorError):
    pass


class StructureViolation(TropTensorError):
    pass


class NoFiniteVertex(TropTensorError):
    pass


class ParseError(TropTensorError, ValueError):
    pass
