"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands have incompatible block or matrix dimensions."""


class NotCommutativeError(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"basis elements {i} and {j} do not commute")
        self.witness = (i, j)


class NotClosedError(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"product of basis elements {i} and {j} leaves the span")
        self.witness = (i, j)


class PreconditionViolation(ValueError):
    """A theorem's hypothesis does not hold for the supplied instance."""


class UnknownConstraint(ValueError):
    pass


class UnknownTheorem(ValueError):
    pass


class IdentityFailure(AssertionError):
    """An identity that a proven statement guarantees failed to hold exactly."""
