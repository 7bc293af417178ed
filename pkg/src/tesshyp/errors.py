"""Exception types shared across the package."""


class TesshypError(Exception):
    """Base class for all package errors."""


class DuplicateEdge(TesshypError):
    pass


class NonPositiveLength(TesshypError):
    pass


class Disconnected(TesshypError):
    pass


class NonPlanarInput(TesshypError):
    pass


class InvalidVariantMode(TesshypError):
    pass


class TriangleViolation(TesshypError):
    pass


class BudgetExceeded(TesshypError):
    def __init__(self, required, available):
        super().__init__(
            f"distance-matrix budget exceeded: need {required} rows, budget is {available}"
        )
        self.required = required
        self.available = available


class FrontierContact(TesshypError):
    pass


class FormatMismatch(TesshypError):
    pass


class SizeLimit(TesshypError):
    pass
