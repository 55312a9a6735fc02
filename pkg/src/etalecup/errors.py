"""Exception hierarchy shared by every module of the package."""


class EtaleCupError(Exception):
    """Base class for all errors raised by etalecup."""


class InvalidInput(EtaleCupError, ValueError):
    """An argument violates a documented precondition."""


class Unsupported(EtaleCupError):
    """The request is well formed but outside the supported range."""


class NoRoot(EtaleCupError):
    """A modular root does not exist."""


class NoSolution(EtaleCupError):
    """A norm (or Legendre) equation has no solution."""


class NotInKernel(EtaleCupError):
    """A Hilbert 90 solver received an element of nontrivial norm."""


class NotTorsion(EtaleCupError):
    """An idele class is not killed by the modulus."""


class DescentFailure(EtaleCupError):
    """Solver exhaustion while building descent data.

    Existence is guaranteed by class field theory, so this always signals
    an internal problem (or an exhausted search cap) rather than bad input.
    """
