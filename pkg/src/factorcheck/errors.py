"""Exception types shared across the package."""


class FactorcheckError(Exception):
    """Base class for every error raised on purpose by this package."""


class UnknownModulusError(FactorcheckError, LookupError):
    pass


class NotPrimeError(FactorcheckError, ValueError):
    pass


class FieldMismatchError(FactorcheckError, TypeError):
    pass


class NotASubfieldError(FactorcheckError, ValueError):
    pass


class SingularMatrixError(FactorcheckError, ZeroDivisionError):
    pass


class ShapeMismatchError(FactorcheckError, ValueError):
    pass


class DegenerateFormError(FactorcheckError, ValueError):
    pass


class OddDimensionError(FactorcheckError, ValueError):
    pass


class NotAnIsometryError(FactorcheckError, ValueError):
    pass


class BudgetExceededError(FactorcheckError, MemoryError):
    def __init__(self, message: str, partial: int | None = None):
        super().__init__(message)
        self.partial = partial


class OrderMismatchError(FactorcheckError, AssertionError):
    def __init__(self, label: str, expected: int, got: int):
        super().__init__(f"{label}: expected order {expected}, BSGS gives {got}")
        self.expected = expected
        self.got = got


class NotAHomomorphismError(FactorcheckError, ValueError):
    pass


class PointNotInUniverseError(FactorcheckError, LookupError):
    pass


class ConstraintViolationError(FactorcheckError, ValueError):
    pass


class StrategyPreconditionError(FactorcheckError, ValueError):
    pass


class BrokenLinkError(FactorcheckError):
    def __init__(self, index: int, message: str):
        super().__init__(f"link {index}: {message}")
        self.index = index
