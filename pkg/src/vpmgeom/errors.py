"""Exception types raised across the package."""


class VpmError(Exception):
    """Base class for all package errors."""


class DomainError(VpmError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class DimensionError(VpmError, ValueError):
    """Matrix or vector dimensions do not agree."""


class AsymmetryError(VpmError, ValueError):
    """A matrix expected to be symmetric is too far from symmetric."""


class SolverError(VpmError, RuntimeError):
    """A numerical routine failed to converge or bracket a solution."""


class DegeneratePencilError(VpmError, ValueError):
    """det(A + tD) vanishes identically in t."""
