"""Exception types shared across the package."""


class Spin1LadderError(Exception):
    """Base class for all package-specific errors."""


class NonOrthogonal(Spin1LadderError):
    """Two directions expected to be orthogonal are not."""


class DegenerateAngle(Spin1LadderError):
    """An angle sits at a pole of the table parametrization (e.g. phi = 90 deg)."""


class InfeasiblePhi(Spin1LadderError):
    """phi lies outside the window where the exclusion constraint is solvable."""


class OutOfRangeTheta(Spin1LadderError):
    """A theta angle is outside the open interval (0 deg, 90 deg)."""


class DimensionMismatch(Spin1LadderError):
    """Operator or state dimensions do not match."""


class ZeroConditioningProbability(Spin1LadderError):
    """The conditioning event has (numerically) zero probability."""


class IncompatibleGivens(Spin1LadderError):
    """Same-particle conditioning events with non-commuting observables."""


class NotMaximallyEntangled(Spin1LadderError):
    """Operation requires equal Schmidt coefficients."""


class InconsistentPattern(Spin1LadderError):
    """The cyclic angle pattern violates the orthogonality constraints."""


class UnverifiedTable(Spin1LadderError):
    """Strict graph construction was asked for a table that fails verification."""


class TooManyObservables(Spin1LadderError):
    """Exhaustive enumeration refused: instance above the observable bound."""
