"""Exception hierarchy shared by every module of the package."""


class DManifoldError(Exception):
    """Base class for all package errors."""


class DimensionError(DManifoldError, ValueError):
    """Variable counts, matrix shapes or point lengths do not match."""


class GroebnerCapExceeded(DManifoldError, RuntimeError):
    """Buchberger's algorithm exceeded its configured step budget."""

    def __init__(self, steps, basis_size):
        super().__init__(
            f"Groebner basis computation exceeded {steps} reduction steps "
            f"(intermediate basis size {basis_size})")
        self.steps = steps
        self.basis_size = basis_size


class ParseError(DManifoldError, ValueError):
    """A polynomial expression could not be parsed."""

    def __init__(self, message, text=None, position=None):
        if text is not None and position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class InvalidMorphism(DManifoldError, ValueError):
    """A 1- or 2-morphism failed its defining congruences.

    The offending report is kept on ``report`` so callers can show residuals.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class WitnessError(DManifoldError, ValueError):
    """A supplied witness point does not lie on the required zero locus."""


class CountError(DManifoldError, RuntimeError):
    """A virtual count could not be certified."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}
