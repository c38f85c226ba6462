"""Exception hierarchy shared by all modules."""


class PolyidentError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PolyidentError):
    """A parameter lies outside the domain of the requested operation."""


class DegenerateParameterError(PolyidentError):
    """Parameters hit a pole of a closed form (zero in a denominator).

    ``factors`` lists human-readable descriptions of the offending
    denominator factors.
    """

    def __init__(self, message: str, factors: list[str] | None = None):
        super().__init__(message)
        self.factors = factors or []


class RelationViolationError(PolyidentError):
    """Variable bindings do not satisfy the quotient-ring relations."""


class IdentityViolationError(PolyidentError):
    """An identity that must hold structurally failed to hold."""


class LimitViolationError(PolyidentError):
    """A scaled deviation sequence failed its required decay rate."""


class PrecisionError(PolyidentError):
    """A numeric routine could not reach the requested accuracy.

    ``diagnostics`` carries the last estimates for post-mortem inspection.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConfigError(PolyidentError):
    """Malformed configuration or command-line input."""
