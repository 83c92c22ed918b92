"""Structured exception types shared across the library."""


class EllipqError(Exception):
    """Base class for all library errors."""


class RingMismatchError(EllipqError, TypeError):
    """Two series or polynomials live over incompatible coefficient rings."""


class ParameterDomainError(EllipqError, ValueError):
    """A parameter violates its domain assumption (e.g. |q| >= 1)."""


class PoleProximityError(EllipqError, ArithmeticError):
    """An evaluation came within the configured threshold of a pole.

    ``lattice_index`` records the offending (j, k) of the pole lattice
    p^{-j} q^{-k} when it is known.
    """

    def __init__(self, message, lattice_index=None):
        super().__init__(message)
        self.lattice_index = lattice_index


class RegionError(EllipqError, ValueError):
    """A parameter point lies outside the admissible region of an operator.

    ``inequality`` names the violated constraint.
    """

    def __init__(self, message, inequality=None):
        super().__init__(message)
        self.inequality = inequality


class BalancingError(EllipqError, ValueError):
    """A balancing constraint on integral parameters is violated."""


class ConvergenceError(EllipqError, ArithmeticError):
    """Adaptive quadrature failed to converge at the grid cap.

    Carries the last two values so the caller can inspect the gap.
    """

    def __init__(self, message, value=None, previous=None):
        super().__init__(message)
        self.value = value
        self.previous = previous


class EnvelopeError(EllipqError, ValueError):
    """Requested sizes exceed the supported computational envelope."""


class DegeneracyError(EllipqError, ArithmeticError):
    """A perturbative linear system is singular (eigenvalue collision)."""


class DenominatorClearError(EllipqError, AssertionError):
    """An operator application failed to clear its rational denominator.

    This indicates an internal inconsistency, not a domain case: outputs of
    the difference operators are Laurent polynomials whenever the inputs are.
    """


class ContourError(EllipqError, ArithmeticError):
    """A contour radius is incompatible with holding the pole configuration fixed."""


class UsageError(EllipqError, ValueError):
    """Invalid command-line or suite configuration."""
