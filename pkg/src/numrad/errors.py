"""Exception hierarchy shared by every numrad module."""


class NumradError(Exception):
    """Base class for all numrad errors."""


class DimensionMismatch(NumradError, ValueError):
    """Operands have incompatible shapes."""


class NotHermitian(NumradError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class InvalidArgument(NumradError, ValueError):
    """An argument violates a documented precondition."""


class NumericalError(NumradError):
    """A numerical routine could not produce a trustworthy result."""


class IllConditioned(NumericalError):
    """The eigensolver did not converge within its sweep cap."""


class Unachievable(NumericalError):
    """The requested tolerance is below what double precision can certify."""


class ParseError(NumradError, ValueError):
    """Malformed matrix or configuration text."""
