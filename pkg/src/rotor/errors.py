"""Exception hierarchy shared by the rotor package."""


class RotorError(Exception):
    """Base class for all errors raised by this package."""


class UnsupportedSizeError(RotorError, ValueError):
    """The requested system size is not defined for the boundary condition."""


class InvalidBondError(RotorError, ValueError):
    pass


class OutOfSectorError(RotorError, KeyError):
    """A pattern is not a member of the basis it was looked up in."""


class ModelInconsistencyError(RotorError):
    """The model produced something that contradicts a structural invariant.

    Raised when an orbit closure overshoots its expected size, when two
    defects collide under a generator, and similar conditions that point to
    a wrong action rule rather than bad user input.
    """


class DegeneracyError(ModelInconsistencyError):
    """The zero-energy eigenspace is not one-dimensional."""


class PositivityError(ModelInconsistencyError):
    """The primitive groundstate vector has entries of both signs (or zeros)."""


class BudgetExceededError(RotorError):
    pass
