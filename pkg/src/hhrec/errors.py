"""Exception hierarchy.

``DegenerateInputError`` roots the family of errors that a verification
campaign treats as "this seed hit a degeneracy, resample" rather than a bug:
they all arise from special numeric data (a vanishing pivot, a vanishing
Wronskian determinant, ...) on which an operation's defining expression has a
pole.  Everything else is a hard error.
"""

from __future__ import annotations


class HHRecError(Exception):
    """Base class for all package-specific errors."""


class NotExactError(HHRecError):
    """Laurent-polynomial division left a remainder (no quotient in the ring)."""


class ZeroAtNegativeExponentError(HHRecError):
    """Substitution assigned 0 to a variable that occurs with a negative exponent."""

    def __init__(self, var: str):
        super().__init__(f"variable {var} occurs with a negative exponent but is assigned 0")
        self.var = var


class LaurentViolationError(HHRecError):
    """Symbolic iteration required a non-exact division.

    This would falsify the Laurent property of the recurrence, so it aborts
    loudly with the offending index instead of degrading to rational functions.
    """

    def __init__(self, n: int):
        super().__init__(f"symbolic iterate x_{n} is not a Laurent polynomial in the initial data")
        self.n = n


class NonIntegerValueError(HHRecError):
    """b-file export requires every value to be an integer."""


class InsufficientDataError(HHRecError):
    """Too few sequence terms to certify a recurrence of the requested order."""


class DegenerateInputError(HHRecError):
    """Specific numeric data hit a pole of the operation; resample and retry."""


class ZeroPivotError(DegenerateInputError):
    """A division by a zero iterate (or zero initial value) in numeric mode."""

    def __init__(self, n: int, what: str = "iterate"):
        super().__init__(f"zero {what} x_{n} used as a divisor")
        self.n = n


class DegenerateDenominatorError(DegenerateInputError):
    """The conserved-quantity ratio has denominator x_{base+2k} - x_base = 0."""


class SingularDeltaError(DegenerateInputError):
    """The 3x3 discrete Wronskian determinant vanished at this index."""

    def __init__(self, n: int):
        super().__init__(f"discrete Wronskian determinant is 0 at n={n}")
        self.n = n


class ZeroAlphaError(DegenerateInputError):
    """A companion-matrix inverse needs alpha_n != 0."""


class SingularSystemError(DegenerateInputError):
    """The 3x3 solve for the order-2 inhomogeneous relation is singular."""


class DegenerateTError(DegenerateInputError):
    """Closed-form extraction needs t = (K-1)/2 outside {0, 1}."""


class ResampleBudgetExhaustedError(HHRecError):
    """Every resampled seed hit a degeneracy within the configured budget."""
