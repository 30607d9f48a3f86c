"""Exception types raised across the package."""


class SymgateError(ValueError):
    """Base class for all errors raised by symgate."""


class NotUnitary(SymgateError):
    def __init__(self, residual, message=None):
        self.residual = float(residual)
        super().__init__(message or f"matrix is not unitary (residual {self.residual:.3e})")


class NotHermitian(SymgateError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix is not Hermitian (residual {self.residual:.3e})")


class InvalidCount(SymgateError):
    pass


class InvalidResolution(SymgateError):
    pass


class InvalidRange(SymgateError):
    pass


class BadAxis(SymgateError):
    pass


class ZeroState(SymgateError):
    pass


class InternalMismatch(SymgateError):
    """Two independent evaluations of the same quantity disagree."""


class ClassifierMismatch(SymgateError):
    """The hull test and the chamber inequality gave different answers."""
