"""Exception types shared across the package."""


class PtError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(PtError, ValueError):
    """An argument is outside its admissible range."""


class ExceptionalPointError(PtError):
    """The Hamiltonian sits at an exceptional point where the requested
    diagonalizable-case operation is undefined."""


class NotExceptionalError(PtError):
    """The operation requires an exceptional-point Hamiltonian."""


class FrameSingularError(PtError):
    """The two-angle frame columns coalesce; the frame is not invertible."""


class NotHermitianError(PtError):
    """A matrix expected to be Hermitian deviates beyond tolerance."""


class NotPositiveError(PtError):
    """A metric expected to be positive definite is not."""


class NotInvertibleError(PtError):
    """A metric expected to be invertible is singular."""


class ConditionNotMetError(PtError):
    """The eigenvalue condition gating an inequality does not hold."""


class DegenerateAngleError(PtError):
    """The angle combination makes the requested quantity undefined."""


class DivisionByZeroError(PtError):
    """A canonical-coordinate ratio has a zero denominator."""


class PatternMismatchError(PtError):
    """A reconstructed metric violates the closed-form solution structure."""


class IntertwiningViolationError(PtError):
    """The supplied metric does not intertwine with the supplied Hamiltonian."""
