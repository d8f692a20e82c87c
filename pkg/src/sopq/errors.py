"""Exception hierarchy shared by the numerical modules and the CLI."""


class SopqError(Exception):
    """Base class for all library errors."""


class DomainError(SopqError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PoleError(DomainError):
    """A gamma function or Pochhammer denominator hits a pole."""


class ParityError(DomainError):
    """Odd representations (epsilon = 1) have no zonal or associated functions."""


class ConvergenceError(SopqError, ArithmeticError):
    """A series or quadrature failed to reach the requested accuracy."""


class ReconstructionError(SopqError):
    """No balanced Horn parameter layout reproduces the reference series."""
