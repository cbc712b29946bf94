"""Exception hierarchy shared by every module."""


class CVCorrError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(CVCorrError, ValueError):
    """An argument is malformed, out of range or of the wrong shape."""


class PhysicalityError(InvalidArgumentError):
    """A covariance matrix or bath violates a physical constraint."""


class NumericalError(CVCorrError, ArithmeticError):
    """A closed form could not be evaluated reliably."""


class NotApplicableError(CVCorrError):
    """A quantifier was asked about a state outside its domain of validity."""
