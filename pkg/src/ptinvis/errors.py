"""Exception hierarchy shared by all solver modules."""


class PTInvisError(Exception):
    """Base class for library errors."""


class DomainError(PTInvisError, ValueError):
    """An argument lies outside the domain of the operation."""


class RangeError(PTInvisError, ArithmeticError):
    """A hyperbolic argument is too large to evaluate without overflow."""


class SingularPrefactorError(PTInvisError, ZeroDivisionError):
    """The (n+^2 - n-^2)^-1 prefactor of the transfer matrix diverges (n1*n2 = 0)."""


class SpectralSingularityError(PTInvisError, ZeroDivisionError):
    """M22 vanishes, so the transmission amplitude has a pole."""


class BranchError(PTInvisError, ValueError):
    """A perturbative seed admits no unidirectional branch."""


class SingularSystemError(PTInvisError, ArithmeticError):
    """A small linear system is (numerically) singular."""


class SpecError(PTInvisError, ValueError):
    """A bidirectional construction request violates its invariants."""


class ResolutionError(DomainError):
    """The integration grid is too coarse for the requested wavenumber."""

    def __init__(self, message, required_steps):
        super().__init__(message)
        self.required_steps = required_steps
