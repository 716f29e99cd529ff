"""Exception types shared across the package."""


class QuditMagicError(Exception):
    """Base class for all package errors."""


class NonInvertibleError(QuditMagicError):
    """Requested a modular inverse of a non-invertible element."""


class DimensionMismatchError(QuditMagicError):
    """Operands live on incompatible (d, N) systems."""


class BudgetExceededError(QuditMagicError):
    """Enumeration or search size exceeds the supported desk-scale budget."""


class UnsupportedDimensionError(QuditMagicError):
    """Operation requires odd prime d (phase-space constructions reject d=2)."""


class InvalidStabilizerError(QuditMagicError):
    """Sign/displacement assignment does not stabilize any state."""


class NotCliffordError(QuditMagicError):
    """Unitary does not normalize the Pauli group."""


class NonClosedGroupError(QuditMagicError):
    """Matrix set is not closed under multiplication with exact phases."""


class InfeasibleExtentError(QuditMagicError):
    """Extent target is outside the span of the dictionary."""


class UnknownStateError(QuditMagicError):
    """Catalog name not recognized."""


class UnknownTableError(QuditMagicError):
    """Table identifier not recognized."""
