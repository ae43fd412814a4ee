"""Exception types raised by the library."""


class EqaoaError(Exception):
    """Base class for all library errors."""


class SizeError(EqaoaError, ValueError):
    """Qubit/variable count outside the supported range."""


class ShapeError(EqaoaError, ValueError):
    """Array length does not match 2**n."""


class DomainError(EqaoaError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegeneracyError(EqaoaError, ArithmeticError):
    """A parameter update annihilated every coefficient."""


class GenerationError(EqaoaError, RuntimeError):
    """Instance generation gave up after its rejection budget."""


class DimacsParseError(EqaoaError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
