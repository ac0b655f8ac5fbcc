"""Exception hierarchy shared by all ildec modules."""


class IldecError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(IldecError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class ZeroInverse(DomainError):
    """Multiplicative inverse of zero requested."""


class IndexOutOfRange(IldecError, IndexError):
    """A column/row index is outside the matrix bounds."""


class DimensionMismatch(IldecError, ValueError):
    """Matrix/vector dimensions are incompatible."""


class RankDeficient(IldecError, ValueError):
    """A matrix that must have full rank does not."""


class TooLarge(IldecError, ValueError):
    """An exhaustive (oracle-scale) computation exceeds its enumeration budget."""


class Exhausted(IldecError, RuntimeError):
    """A rejection-sampling retry budget was exceeded."""


class Infeasible(IldecError, ValueError):
    """No error matrix with the requested support exists (false-positive support)."""


class BudgetExhausted(IldecError, RuntimeError):
    """A decoder ran out of iterations without finding a solution."""


class NoErrorToFind(IldecError, ValueError):
    """The received matrix is already row-wise in the code; the nonempty-support
    output contract cannot be met."""


class NoSolution(IldecError, ValueError):
    """Exhaustive search proved that no admissible error exists."""


class NoVerifiedCandidate(IldecError, RuntimeError):
    """Low-weight codewords were found but none passed support verification."""
