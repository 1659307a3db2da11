"""Exception hierarchy shared by all coxdom modules."""


class CoxdomError(Exception):
    """Base class for all errors raised by coxdom."""


class ParseError(CoxdomError):
    """Malformed datum file or scalar literal."""


class ValidationError(CoxdomError):
    """Structurally well-formed input that violates a datum constraint."""


class DomainError(CoxdomError):
    """Argument outside the mathematical domain of an operation."""


class DimensionError(CoxdomError):
    """Vector length does not match the datum rank."""


class NotARootError(CoxdomError):
    """Coefficient vector with mixed signs, which no root can have."""


class NotUnitError(CoxdomError):
    """Reflecting vector whose self inner product is not 1."""


class NotReducedError(CoxdomError):
    """Word that produced duplicate or negative inversion-set members."""


class LimitError(CoxdomError):
    """A configured size or iteration cap was exceeded."""


class FiniteDihedralError(CoxdomError):
    """Pair of roots generating a finite dihedral subgroup (out of scope)."""


class NotInPlaneError(CoxdomError):
    """Vector outside the span of a dihedral frame."""


class NotInSubsystemError(CoxdomError):
    """In-plane vector whose coordinates match no chain window."""


class ConsistencyError(CoxdomError):
    """Two independent computations of the same quantity disagreed."""
