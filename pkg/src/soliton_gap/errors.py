"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is valid."""


class QuadratureError(ArithmeticError):
    """Adaptive quadrature failed to reach its tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


class ConsistencyError(ArithmeticError):
    """Two independent evaluation routes disagree beyond tolerance."""

    def __init__(self, message, first, second, tolerance):
        super().__init__(
            f"{message}: {first!r} vs {second!r} (|diff|={abs(first - second)!r}, tol={tolerance!r})"
        )
        self.first = first
        self.second = second
        self.tolerance = tolerance


class InfeasibleError(ValueError):
    """The threshold target is not met even at the lower end of the bracket."""

    def __init__(self, value_at_lo, target):
        super().__init__(f"F(lo) = {value_at_lo!r} is below target {target!r}")
        self.value_at_lo = value_at_lo
        self.target = target


class VerificationFailure(AssertionError):
    """A numeric identity or inequality check on a model soliton failed."""

    def __init__(self, check, residual, where, tolerance):
        super().__init__(f"{check}: residual {residual!r} > {tolerance!r} at {where!r}")
        self.check = check
        self.residual = residual
        self.where = where
        self.tolerance = tolerance
