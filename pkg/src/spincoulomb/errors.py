"""Typed errors shared across modules."""


class SpinCoulombError(Exception):
    """Base class."""


class DomainError(SpinCoulombError, ValueError):
    """Input outside the admissible domain of an operation."""


class DimensionError(SpinCoulombError, ValueError):
    """Operator-valued inputs with mismatched matrix sizes."""


class NoSolutionError(SpinCoulombError):
    """Parameter pair for which no static spin-potential solution exists."""


class ConstraintViolation(SpinCoulombError):
    """A solution case was requested whose algebraic constraint fails."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SupercriticalError(SpinCoulombError):
    """Coupling so strong that an exponent or effective angular momentum turns complex."""


class NoBoundStateError(SpinCoulombError):
    """Repulsive coupling: no normalisable bound state."""


class CollisionError(SpinCoulombError):
    """Classical trajectory came within the collision radius."""


class ConvergenceError(SpinCoulombError):
    """Numerical oracle failed its own convergence self-check."""
