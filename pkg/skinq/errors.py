from typing import Optional


class SkinError(Exception):
    """Base class for every error raised by skinq."""


class DomainError(SkinError, ValueError):
    pass


class BranchCutError(DomainError):
    pass


class SpecialFunctionOverflow(SkinError, OverflowError):
    pass


class ConvergenceError(SkinError):
    pass


class InvalidParameterError(SkinError, ValueError):
    pass


class GridConfigError(SkinError, ValueError):
    pass


class IntegrandError(SkinError, ArithmeticError):
    pass


class QuadratureError(SkinError):
    def __init__(self, message: str, estimate: Optional[complex] = None):
        super().__init__(message)
        self.estimate = estimate


class DimensionMismatchError(SkinError, ValueError):
    pass


class SingularSystemError(SkinError):
    pass


class BranchDiscontinuityError(SkinError):
    pass


class ConfigError(SkinError, ValueError):
    pass


class EmptyResultsError(SkinError):
    pass
