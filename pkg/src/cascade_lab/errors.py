"""Exception hierarchy for cascade_lab."""


class CascadeError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidBaseError(CascadeError):
    pass


class InvalidExponentError(CascadeError):
    pass


class CapacityError(CascadeError):
    """A requested grid, enumeration or moment order exceeds the size guard."""


class RefinementError(CascadeError):
    pass


class UndefinedPathError(CascadeError):
    """B^H_n is not defined for H = -inf (use the walk in :mod:`cascade_lab.fclt`)."""


class DomainError(CascadeError):
    pass


class RegimeError(CascadeError):
    """Operation requested outside the H-regime where it is defined."""


class SampleSizeError(CascadeError):
    pass
