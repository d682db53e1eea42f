"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside its documented domain."""


class GraphConstructionError(ValueError):
    """Invalid edge list (self-loop or out-of-range endpoint)."""


class DimacsParseError(ValueError):
    """Malformed DIMACS input; carries the offending line number."""

    def __init__(self, message, line_no):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ResourceLimitError(RuntimeError):
    """A configured size budget would be exceeded."""


class BudgetExceededError(RuntimeError):
    """An exact solver ran past its vertex or wall-clock budget."""


class DegenerateStateError(RuntimeError):
    """Replicator step hit a vanishing denominator."""


class NumericError(ArithmeticError):
    """Non-finite values where finite ones are required."""


class InternalValidationError(RuntimeError):
    """A result failed its own validity check; indicates a bug."""
