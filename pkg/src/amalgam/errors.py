"""Exception hierarchy shared by all modules."""


class AmalgamError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AmalgamError):
    """An argument does not live where the operation needs it to
    (element not in the algebra, subalgebra of the wrong parent, ...)."""


class PreconditionError(AmalgamError):
    """A stated precondition of an operation is violated."""
