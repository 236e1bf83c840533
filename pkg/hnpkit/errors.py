"""Exception hierarchy shared by every hnpkit module."""


class HnpError(Exception):
    """Base class for all errors raised by hnpkit."""


class UsageError(HnpError):
    """Invalid arguments: wrong dimensions, mixed moduli, composite modulus and the like."""


class ParseError(HnpError):
    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class PreconditionError(HnpError):
    """An operation was called on an input outside its contract."""


class InexactDivisionError(HnpError):
    """Exact division was requested but the divisor does not divide the dividend."""


class BudgetExceeded(HnpError):
    def __init__(self, cap: str, limit: int, observed: int) -> None:
        self.cap = cap
        self.limit = limit
        self.observed = observed
        super().__init__(f"budget exceeded: {cap} reached {observed} (limit {limit})")


class DegenerateCaseError(HnpError):
    """No candidate in the searched range satisfies the acceptance test."""
